//! Batch commands over problem files and their JSON reports.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::dsl::{self, Diagnostic, ProblemFile};
use crate::error::Error;
use crate::ginzburg::{
    audit_passes, build_b, build_gamma, check_d_squared, generator_audit, ArrowRole, DgAlgebra,
    SampleOptions,
};
use crate::homology::{default_max_len, h0_presentation, homology_dims, vosnex_equivalence_check};
use crate::ideals::{self, AdmissibleIdeal, DEFAULT_MAX_N};
use crate::quiver::GradedQuiver;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    BuildB,
    BuildGamma,
    CheckD2,
    Homology,
    H0,
    Vosnex,
    IdealDim,
    Admissibility,
    SystemOfRelations,
    Ext2,
    SplitExt2,
    Report,
}

impl Command {
    pub const ALL: [Command; 13] = [
        Command::Validate,
        Command::BuildB,
        Command::BuildGamma,
        Command::CheckD2,
        Command::Homology,
        Command::H0,
        Command::Vosnex,
        Command::IdealDim,
        Command::Admissibility,
        Command::SystemOfRelations,
        Command::Ext2,
        Command::SplitExt2,
        Command::Report,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::BuildB => "build-b",
            Command::BuildGamma => "build-gamma",
            Command::CheckD2 => "check-d2",
            Command::Homology => "homology",
            Command::H0 => "h0",
            Command::Vosnex => "vosnex",
            Command::IdealDim => "ideal-dim",
            Command::Admissibility => "admissibility",
            Command::SystemOfRelations => "system-of-relations",
            Command::Ext2 => "ext2",
            Command::SplitExt2 => "split-ext-2",
            Command::Report => "report",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = RunError;

    fn from_str(s: &str) -> Result<Self, RunError> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| RunError::Usage(format!("unknown command `{s}`")))
    }
}

/// Command-line flags; each overrides the matching file option.
#[derive(Clone, Debug, Default)]
pub struct Flags {
    pub m: Option<i64>,
    pub max_len: Option<usize>,
    pub max_n: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Debug)]
pub enum RunError {
    Parse(Vec<Diagnostic>),
    Usage(String),
    Computation(Error),
}

impl RunError {
    /// 2 for parse and usage errors, 1 for computation errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Computation(_) => 1,
            RunError::Parse(_) | RunError::Usage(_) => 2,
        }
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Parse(ds) => {
                for (i, d) in ds.iter().enumerate() {
                    if i > 0 {
                        writeln!(f)?;
                    }
                    write!(f, "{d}")?;
                }
                Ok(())
            }
            RunError::Usage(s) => write!(f, "usage error: {s}"),
            RunError::Computation(e) => write!(f, "computation error: {e}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Computation(e)
    }
}

struct Settings {
    m: Option<i64>,
    max_len: Option<usize>,
    max_n: usize,
    seed: u64,
    samples: usize,
}

impl Settings {
    fn new(file: &ProblemFile, flags: &Flags) -> Self {
        Settings {
            m: flags.m.or(file.m),
            max_len: flags.max_len.or_else(|| file.option_usize("max_len")),
            max_n: flags
                .max_n
                .or_else(|| file.option_usize("max_N"))
                .or_else(|| file.option_usize("max_n"))
                .unwrap_or(DEFAULT_MAX_N),
            seed: flags.seed.or_else(|| file.option_u64("seed")).unwrap_or(0),
            samples: file
                .option_usize("samples")
                .unwrap_or(SampleOptions::default().samples_per_degree),
        }
    }

    fn sample_options(&self) -> SampleOptions {
        SampleOptions {
            max_len: self.max_len.unwrap_or(SampleOptions::default().max_len),
            samples_per_degree: self.samples,
            seed: self.seed,
        }
    }
}

fn input_json(p: &ProblemFile) -> Value {
    let q = &p.quiver;
    let arrows: Vec<Value> = q
        .arrows()
        .iter()
        .map(|a| json!({"id": a.id, "source": a.source, "target": a.target, "degree": a.degree}))
        .collect();
    let relations: Vec<Value> = p
        .relations
        .entries()
        .iter()
        .map(|r| {
            json!({
                "label": r.label,
                "source": q.vertex_id(r.source),
                "target": q.vertex_id(r.target),
                "body": r.body.to_string(),
            })
        })
        .collect();
    let mut m = Map::new();
    m.insert("vertices".into(), json!(q.vertices()));
    m.insert("arrows".into(), Value::Array(arrows));
    m.insert("relations".into(), Value::Array(relations));
    if let Some(v) = p.m {
        m.insert("m".into(), json!(v));
    }
    m.insert("options".into(), json!(p.options));
    Value::Object(m)
}

fn role_name(r: ArrowRole) -> &'static str {
    match r {
        ArrowRole::Base => "arrow",
        ArrowRole::Eta(_) => "eta",
        ArrowRole::Eps(_) => "eps",
        ArrowRole::Dual(_) => "dual",
        ArrowRole::Loop(_) => "loop",
    }
}

fn arrows_json(q: &GradedQuiver, roles: Option<&[ArrowRole]>) -> Value {
    Value::Array(
        q.arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let mut o =
                    json!({"id": a.id, "source": a.source, "target": a.target, "degree": a.degree});
                if let Some(r) = roles {
                    o["role"] = json!(role_name(r[i]));
                }
                o
            })
            .collect(),
    )
}

fn dg_json(dg: &DgAlgebra) -> Value {
    let diffs: Map<String, Value> = dg
        .differentials()
        .map(|(id, x)| (id.to_string(), json!(x.to_string())))
        .collect();
    json!({"arrows": arrows_json(dg.quiver(), Some(dg.roles())), "differentials": diffs})
}

fn relations_json<'a>(rels: impl Iterator<Item = (&'a str, String)>) -> Value {
    Value::Array(rels.map(|(l, b)| json!({"label": l, "body": b})).collect())
}

fn error_json(e: &Error) -> Value {
    json!({"error": e.to_string()})
}

/// Keys of `section` merged into `out[key]`.
fn merge(out: &mut Map<String, Value>, key: &str, section: Map<String, Value>) {
    let slot = out
        .entry(key.to_string())
        .or_insert_with(|| Value::Object(Map::new()));
    if let Value::Object(o) = slot {
        o.extend(section);
    }
}

fn obj(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(o) => o,
        _ => unreachable!("object literal"),
    }
}

struct Runner<'a> {
    file: &'a ProblemFile,
    s: Settings,
    out: Map<String, Value>,
}

impl<'a> Runner<'a> {
    fn m(&self, cmd: Command) -> Result<i64, RunError> {
        self.s
            .m
            .ok_or_else(|| RunError::Usage(format!("`{cmd}` needs `--m` or an `m = ...` line")))
    }

    fn bound(&self) -> crate::Result<usize> {
        ideals::find_admissibility_bound(&self.file.relations, self.s.max_n)
    }

    fn validate(&mut self) {
        let q = &self.file.quiver;
        let square = match self.file.relations.check_in_square() {
            Ok(()) => "ok".to_string(),
            Err(e) => e.to_string(),
        };
        merge(
            &mut self.out,
            "checks",
            obj(json!({
                "quiver": "ok",
                "relations_in_square": square,
                "acyclic": q.is_acyclic(),
                "degree_zero_arrows": self.file.is_ungraded(),
            })),
        );
    }

    fn build_b(&mut self) -> Result<(), RunError> {
        let b = build_b(&self.file.quiver, &self.file.relations)?;
        self.out.insert("b".into(), dg_json(&b));
        Ok(())
    }

    fn gamma(&self, m: i64) -> crate::Result<DgAlgebra> {
        build_gamma(&self.file.quiver, &self.file.relations, m)
    }

    fn build_gamma(&mut self, m: i64) -> Result<(), RunError> {
        let g = self.gamma(m)?;
        self.out.insert("m".into(), json!(m));
        self.out.insert("gamma".into(), dg_json(&g));
        Ok(())
    }

    fn check_d2(&mut self) -> Result<(), RunError> {
        let opts = self.s.sample_options();
        let b = build_b(&self.file.quiver, &self.file.relations)?;
        let mut checks = Map::new();
        checks.insert(
            "d_squared_b".into(),
            json!(check_d_squared(&b, opts).to_string()),
        );
        if let Some(m) = self.s.m {
            let g = self.gamma(m)?;
            checks.insert(
                "d_squared".into(),
                json!(check_d_squared(&g, opts).to_string()),
            );
        }
        merge(&mut self.out, "checks", checks);
        Ok(())
    }

    fn homology(&mut self, m: i64) -> Result<(), RunError> {
        let g = self.gamma(m)?;
        let l = match self.s.max_len {
            Some(l) => l,
            None => {
                let n = self.bound().unwrap_or(0);
                default_max_len(m, n, self.file.relations.max_path_len())
            }
        };
        let h = homology_dims(&g, m, l)?;
        let dims: Map<String, Value> = h
            .dims
            .iter()
            .map(|(i, d)| (i.to_string(), json!(d)))
            .collect();
        let mut sec = obj(json!({
            "L": h.max_len,
            "stabilized": h.stabilized,
            "dims": dims,
            "vosnex": h.vosnex,
        }));
        if !h.stabilized {
            sec.insert(
                "caveat".into(),
                json!(format!("dimensions at L = {} and L = {} differ", l, l + 1)),
            );
        }
        self.out.insert("m".into(), json!(m));
        self.out.insert("homology".into(), Value::Object(sec));
        Ok(())
    }

    fn h0(&mut self, m: i64) -> Result<(), RunError> {
        let g = self.gamma(m)?;
        let h = h0_presentation(&g)?;
        let rels = relations_json(h.relations.iter().map(|(l, b)| (l.as_str(), b.to_string())));
        self.out.insert("m".into(), json!(m));
        self.out.insert(
            "h0".into(),
            json!({"arrows": arrows_json(&h.quiver, None), "relations": rels}),
        );
        Ok(())
    }

    fn vosnex(&mut self, m: i64) -> Result<(), RunError> {
        let r = vosnex_equivalence_check(
            &self.file.quiver,
            &self.file.relations,
            m,
            self.s.max_len,
            self.s.max_n,
        )?;
        let dims: Map<String, Value> = r
            .homology
            .dims
            .iter()
            .map(|(i, d)| (i.to_string(), json!(d)))
            .collect();
        self.out.insert("m".into(), json!(m));
        self.out.insert(
            "vosnex".into(),
            json!({
                "a": r.a,
                "b": r.b,
                "c": r.c,
                "d": r.d,
                "all_agree": r.all_agree(),
                "admissible_N": r.admissibility_bound,
            }),
        );
        self.out.insert(
            "homology".into(),
            json!({
                "L": r.homology.max_len,
                "stabilized": r.homology.stabilized,
                "dims": dims,
                "vosnex": r.homology.vosnex,
            }),
        );
        Ok(())
    }

    fn ideal(&mut self, cmd: Command) -> Result<(), RunError> {
        let r = &self.file.relations;
        r.check_in_square()?;
        let ideal = AdmissibleIdeal::new(r, self.s.max_n)?;
        let n = ideal.bound();
        let mut sec = Map::new();
        sec.insert("admissible_N".into(), json!(n));
        match cmd {
            Command::IdealDim => {
                sec.insert("dim".into(), json!(ideal.algebra_dim()));
            }
            Command::SystemOfRelations => {
                let sys = ideals::system_of_relations(r, n)?;
                sec.insert(
                    "system_of_relations".into(),
                    relations_json(
                        sys.entries()
                            .iter()
                            .map(|x| (x.label.as_str(), x.body.to_string())),
                    ),
                );
            }
            Command::Ext2 => {
                sec.insert("ext2".into(), json!(ideal.boundary_quotient_dim()));
            }
            _ => {}
        }
        merge(&mut self.out, "ideal", sec);
        Ok(())
    }

    fn split_ext(&mut self) -> Result<(), RunError> {
        let v = ideals::split_extension_check(&self.file.relations, self.s.max_n)?;
        merge(
            &mut self.out,
            "checks",
            obj(json!({"split_extension": v.to_string()})),
        );
        Ok(())
    }

    /// Everything applicable; a failing section records its error and the
    /// rest still runs.
    fn report(&mut self, m: i64) -> Result<(), RunError> {
        self.validate();
        self.out.insert("m".into(), json!(m));
        let g = match self.gamma(m) {
            Ok(g) => g,
            Err(e) => {
                self.out.insert("gamma".into(), error_json(&e));
                return Ok(());
            }
        };
        self.out.insert("gamma".into(), dg_json(&g));
        if let Err(RunError::Computation(e)) = self.check_d2() {
            merge(
                &mut self.out,
                "checks",
                obj(json!({"d_squared": e.to_string()})),
            );
        }
        let audit = generator_audit(&g, &self.file.relations, m)?;
        let audit = if audit_passes(&audit) {
            "ok".to_string()
        } else {
            let bad: Vec<&str> = audit
                .iter()
                .filter(|r| r.degree != r.expected_degree || !r.differential_ok)
                .map(|r| r.arrow.as_str())
                .collect();
            format!("mismatch at {}", bad.join(", "))
        };
        merge(
            &mut self.out,
            "checks",
            obj(json!({"generator_audit": audit})),
        );
        if let Err(RunError::Computation(e)) = self.homology(m) {
            self.out.insert("homology".into(), error_json(&e));
        }
        if let Err(RunError::Computation(e)) = self.h0(m) {
            self.out.insert("h0".into(), error_json(&e));
        }
        if self.file.is_ungraded() {
            for cmd in [Command::IdealDim, Command::SystemOfRelations, Command::Ext2] {
                if let Err(RunError::Computation(e)) = self.ideal(cmd) {
                    self.out.insert("ideal".into(), error_json(&e));
                    break;
                }
            }
            if m > 2 {
                let homology = self.out.get("homology").cloned();
                if let Err(RunError::Computation(e)) = self.vosnex(m) {
                    self.out.insert("vosnex".into(), error_json(&e));
                } else if let Some(h) = homology {
                    // keep the report's own truncation choice
                    self.out.insert("homology".into(), h);
                }
            }
            if m == 2 {
                if let Err(RunError::Computation(e)) = self.split_ext() {
                    merge(
                        &mut self.out,
                        "checks",
                        obj(json!({"split_extension": e.to_string()})),
                    );
                }
            }
        }
        Ok(())
    }
}

/// Runs one command and returns the report object, input echo included.
pub fn run(cmd: Command, file: &ProblemFile, flags: &Flags) -> Result<Value, RunError> {
    let mut r = Runner {
        file,
        s: Settings::new(file, flags),
        out: Map::new(),
    };
    r.out.insert("input".into(), input_json(file));
    match cmd {
        Command::Validate => r.validate(),
        Command::BuildB => r.build_b()?,
        Command::BuildGamma => {
            let m = r.m(cmd)?;
            r.build_gamma(m)?
        }
        Command::CheckD2 => r.check_d2()?,
        Command::Homology => {
            let m = r.m(cmd)?;
            r.homology(m)?
        }
        Command::H0 => {
            let m = r.m(cmd)?;
            r.h0(m)?
        }
        Command::Vosnex => {
            let m = r.m(cmd)?;
            r.vosnex(m)?
        }
        Command::IdealDim | Command::Admissibility | Command::SystemOfRelations | Command::Ext2 => {
            r.ideal(cmd)?
        }
        Command::SplitExt2 => r.split_ext()?,
        Command::Report => {
            let m = r.m(cmd)?;
            r.report(m)?
        }
    }
    Ok(Value::Object(r.out))
}

/// Parses `text` and runs `cmd` on it.
pub fn run_text(cmd: Command, text: &str, flags: &Flags) -> Result<Value, RunError> {
    let file = dsl::parse(text).map_err(RunError::Parse)?;
    run(cmd, &file, flags)
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn emit_report(report: &Value) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("json values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const ZERO: &str = "vertex v\nrelation z : v -> v = 0\n";
    const QUATERNION: &str = "\
vertex v
arrow x : v -> v
arrow y : v -> v
relation r1 : v -> v = x*x - y*x*y
relation r2 : v -> v = y*y - x*y*x
relation r3 : v -> v = x*x*y
";

    fn run_ok(cmd: Command, text: &str, flags: Flags) -> Value {
        run_text(cmd, text, &flags).unwrap()
    }

    #[test]
    fn command_names_round_trip() {
        for c in Command::ALL {
            assert_eq!(c.name().parse::<Command>().unwrap(), c);
        }
        assert_eq!("nope".parse::<Command>().unwrap_err().exit_code(), 2);
    }

    #[test]
    fn homology_of_zero_relation() {
        let v = run_ok(
            Command::Homology,
            ZERO,
            Flags {
                m: Some(4),
                ..Flags::default()
            },
        );
        assert_eq!(
            v["homology"]["dims"],
            json!({"0": 1, "1": 1, "2": 2, "3": 2})
        );
        assert_eq!(v["homology"]["stabilized"], json!(true));
    }

    #[test]
    fn quaternion_ideal() {
        let v = run_ok(Command::IdealDim, QUATERNION, Flags::default());
        assert_eq!(v["ideal"]["dim"], json!(8));
        assert_eq!(v["ideal"]["admissible_N"], json!(5));
        let v = run_ok(Command::Ext2, QUATERNION, Flags::default());
        assert_eq!(v["ideal"]["ext2"], json!(2));
    }

    #[test]
    fn vosnex_on_acyclic() {
        let text = "vertex a b c\narrow x : a -> b\narrow y : b -> c\n";
        let v = run_ok(
            Command::Vosnex,
            text,
            Flags {
                m: Some(3),
                ..Flags::default()
            },
        );
        assert_eq!(v["vosnex"]["all_agree"], json!(true));
        assert_eq!(v["homology"]["vosnex"], json!(true));
    }

    #[test]
    fn error_codes() {
        let e = run_text(Command::Homology, ZERO, &Flags::default()).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let e = run_text(
            Command::Validate,
            "vertex v\narrow a : v -> w\n",
            &Flags::default(),
        )
        .unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let loop_file = "vertex v\narrow x : v -> v\n";
        let e = run_text(
            Command::IdealDim,
            loop_file,
            &Flags {
                max_n: Some(4),
                ..Flags::default()
            },
        )
        .unwrap_err();
        assert_eq!(e.exit_code(), 1);
    }

    #[test]
    fn empty_results_echo_input() {
        let v = run_ok(Command::Admissibility, "vertex v\n", Flags::default());
        assert_eq!(v["input"]["vertices"], json!(["v"]));
        assert_eq!(v["ideal"]["admissible_N"], json!(2));
    }

    #[test]
    fn report_is_deterministic() {
        let flags = Flags {
            m: Some(3),
            ..Flags::default()
        };
        let a = emit_report(&run_ok(Command::Report, QUATERNION, flags.clone()));
        let b = emit_report(&run_ok(Command::Report, QUATERNION, flags));
        assert_eq!(a, b);
        let v: Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["ideal"]["dim"], json!(8));
        assert_eq!(v["ideal"]["ext2"], json!(2));
        assert_eq!(v["checks"]["d_squared"], json!("ok"));
        assert_eq!(v["checks"]["generator_audit"], json!("ok"));
    }
}
