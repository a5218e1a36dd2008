//! End-to-end acceptance checks, one PASS/FAIL line each.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use ginzburg_dg::dsl;
use ginzburg_dg::ginzburg::{
    audit_passes, build_b, build_gamma, check_d_squared, generator_audit, RelationSequence,
    SampleOptions,
};
use ginzburg_dg::homology::{h0_presentation, homology_dims, vosnex_equivalence_check};
use ginzburg_dg::ideals::{
    algebra_dim, ext2_dim, find_admissibility_bound, ideal_membership, representation_witness,
    system_of_relations, AdmissibleIdeal,
};
use ginzburg_dg::linalg::{int, DenseMatrix};
use ginzburg_dg::quiver::GradedQuiver;
use ginzburg_dg::{Homogeneity, PathElement, Superpotential};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|x| x.to_string())
}

fn one_vertex() -> Arc<GradedQuiver> {
    Arc::new(GradedQuiver::builder().vertex("v").build().unwrap())
}

fn zeros(q: &Arc<GradedQuiver>, ends: &[(&str, &str)]) -> RelationSequence {
    let mut r = RelationSequence::new(q);
    for (k, (s, t)) in ends.iter().enumerate() {
        r.push(&format!("z{k}"), s, t, PathElement::zero(q))
            .unwrap();
    }
    r
}

fn criterion_1() -> Outcome {
    let q = one_vertex();
    for m in 3..=5i64 {
        let g = e(build_gamma(&q, &zeros(&q, &[("v", "v")]), m))?;
        let h = e(homology_dims(&g, m, (m + 2) as usize))?;
        for i in 0..m {
            let want = if i < m - 2 {
                1
            } else if i == m - 2 {
                2
            } else {
                2 + usize::from(m == 3)
            };
            ensure(h.dims[&(i as usize)] == want, || {
                format!(
                    "R'={{0}}, m={m}: dim H^-{i} = {}, expected {want}",
                    h.dims[&(i as usize)]
                )
            })?;
        }
        let g = e(build_gamma(&q, &RelationSequence::new(&q), m))?;
        let h = e(homology_dims(&g, m, (m + 2) as usize))?;
        for i in 0..m as usize {
            let want = usize::from(i == 0);
            ensure(h.dims[&i] == want, || {
                format!("R={{}}, m={m}: dim H^-{i} = {}", h.dims[&i])
            })?;
        }
    }
    Ok("m = 3, 4, 5 for R' = {0} and R = {}".into())
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for k in 0..5 {
        let q = common::random_acyclic_quiver(&mut rng, 4, 5, false);
        for m in [3, 4] {
            let r = e(vosnex_equivalence_check(
                &q,
                &RelationSequence::new(&q),
                m,
                None,
                12,
            ))?;
            ensure(r.homology.vosnex && r.a && r.b && r.c && r.d, || {
                format!(
                    "quiver {k}, m={m}: vosnex={} conditions=({},{},{},{})",
                    r.homology.vosnex, r.a, r.b, r.c, r.d
                )
            })?;
        }
    }
    Ok("5 random acyclic quivers, m = 3 and 4".into())
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut summary = Vec::new();
    for k in 0..10 {
        let q = common::random_acyclic_quiver(&mut rng, 4, 5, true);
        let count = rng.gen_range(1..=4);
        let r = common::random_relations(&mut rng, &q, count, 3);
        let m = if k % 2 == 0 { 3 } else { 4 };
        let n = e(find_admissibility_bound(&r, 12))?;
        let g = e(build_gamma(&q, &r, m))?;
        let l = ginzburg_dg::homology::default_max_len(m, n, r.max_path_len());
        let h = e(homology_dims(&g, m, l))?;
        let top = h.dims[&((m - 2) as usize)];
        ensure(top >= r.len(), || {
            format!("case {k}: dims({}) = {top} < |R| = {}", m - 2, r.len())
        })?;
        let sys = e(system_of_relations(&r, n))?;
        let ext2 = e(ext2_dim(&r, n))?;
        ensure(sys.len() >= ext2, || {
            format!("case {k}: |system| = {} < ext2 = {ext2}", sys.len())
        })?;
        summary.push(format!("{}/{top}/{}/{ext2}", r.len(), sys.len()));
    }
    Ok(format!("|R|/dims(m-2)/|sys|/ext2: {}", summary.join(" ")))
}

fn criterion_4() -> Outcome {
    let p = e(dsl::parse(&common::fixture("quaternion.quiver")).map_err(|d| format!("{d:?}")))?;
    let (q, r) = (&p.quiver, &p.relations);
    let n = e(find_admissibility_bound(r, 12))?;
    ensure(n == 5, || format!("bound {n}, expected 5"))?;
    let ideal = e(AdmissibleIdeal::with_bound(r, 5))?;
    ensure(ideal.algebra_dim() == 8, || {
        format!("dim {}", ideal.algebra_dim())
    })?;
    let a2b = e(PathElement::path(q, &["alpha", "alpha", "beta"]))?;
    ensure(e(ideal_membership(r, 5, &a2b))?, || {
        "alpha^2 beta not in I".into()
    })?;
    ensure(e(ideal.boundary_image_is_zero(&a2b))?, || {
        "image of alpha^2 beta in I/(Ir+rI) is nonzero".into()
    })?;
    let prime = r.select(&[0, 1]);
    let dims = BTreeMap::from([("v".to_string(), 1)]);
    let one = DenseMatrix::identity(1);
    let maps = BTreeMap::from([
        ("alpha".to_string(), one.clone()),
        ("beta".to_string(), one),
    ]);
    for x in prime.bodies() {
        ensure(
            e(representation_witness(q, &dims, &maps, x))?.is_zero(),
            || format!("{x} acts nonzero"),
        )?;
    }
    let w = e(representation_witness(q, &dims, &maps, &a2b))?;
    ensure(*w.get(0, 0) == int(1), || {
        format!("alpha^2 beta acts as {}", w.get(0, 0))
    })?;
    ensure(AdmissibleIdeal::new(&prime, 12).is_err(), || {
        "I' reported admissible".into()
    })?;
    Ok("N = 5, dim 8, boundary image zero, witness value 1".into())
}

fn criterion_5() -> Outcome {
    let p = e(dsl::parse(&common::fixture("square_d4.quiver")).map_err(|d| format!("{d:?}")))?;
    let (q, r) = (&p.quiver, &p.relations);
    let rho = &r.entries()[0].body;
    let n = e(find_admissibility_bound(r, 12))?;
    let dim = e(algebra_dim(r, n))?;
    for m in [3, 4] {
        let g = e(build_gamma(q, r, m))?;
        let h = e(h0_presentation(&g))?;
        ensure(*h.quiver == **q, || format!("m={m}: H0 quiver differs"))?;
        let rels: Vec<&PathElement> = h.nonzero().collect();
        let rho_h = e(rho.embed(&h.quiver))?;
        ensure(
            rels.len() == 1 && (*rels[0] == rho_h || *rels[0] == rho_h.neg()),
            || {
                format!(
                    "m={m}: H0 relations {:?}",
                    rels.iter().map(|x| x.to_string()).collect::<Vec<_>>()
                )
            },
        )?;
        let hd = e(homology_dims(
            &g,
            m,
            ginzburg_dg::homology::default_max_len(m, n, 2),
        ))?;
        ensure(hd.dims[&0] == 9 && dim == 9, || {
            format!("m={m}: dim H0 = {}, algebra dim = {dim}", hd.dims[&0])
        })?;
    }
    let v = e(ginzburg_dg::ideals::split_extension_check(r, 12))?;
    ensure(v.is_ok(), || format!("split extension: {v}"))?;
    let g = e(build_gamma(q, r, 2))?;
    let h = e(h0_presentation(&g))?;
    let qt = &h.quiver;
    let el = |ids: &[&str]| PathElement::path(qt, ids).unwrap();
    let want = [
        el(&["alpha", "beta"])
            .sub(&el(&["gamma", "delta"]))
            .unwrap(),
        el(&["eps_r1", "alpha"]),
        el(&["beta", "eps_r1"]),
        el(&["eps_r1", "gamma"]),
        el(&["delta", "eps_r1"]),
    ];
    let got: Vec<&PathElement> = h.nonzero().collect();
    let matched = want
        .iter()
        .all(|w| got.iter().any(|g| **g == *w || **g == w.neg()));
    ensure(got.len() == want.len() && matched, || {
        format!(
            "m=2: H0 relations {:?}",
            got.iter().map(|x| x.to_string()).collect::<Vec<_>>()
        )
    })?;
    Ok("m = 3, 4: (Q, +-rho), dim 9; m = 2: split, five relations".into())
}

fn random_homogeneous(rng: &mut impl Rng, q: &Arc<GradedQuiver>) -> Option<PathElement> {
    let p = common::random_path(rng, q, 4)?;
    let deg = q.path_degree(&p);
    let mut x = PathElement::from_path(q, p).scale(&int(rng.gen_range(1..=3)));
    for _ in 0..2 {
        if let Some(p2) = common::random_path(rng, q, 4) {
            if q.path_degree(&p2) == deg {
                x = x
                    .add(&PathElement::from_path(q, p2).scale(&int(rng.gen_range(-2..=2))))
                    .unwrap();
            }
        }
    }
    Some(x)
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut gammas = Vec::new();
    for k in 0..50 {
        let q = if k % 2 == 0 {
            common::random_quiver(&mut rng, 3, 4)
        } else {
            common::random_acyclic_quiver(&mut rng, 4, 5, true)
        };
        let count = rng.gen_range(0..=3);
        let r = common::random_relations(&mut rng, &q, count, 3);
        let m = rng.gen_range(2..=5);
        let opts = SampleOptions {
            max_len: 5,
            samples_per_degree: 40,
            seed: k,
        };
        let b = e(build_b(&q, &r))?;
        let v = check_d_squared(&b, opts);
        ensure(v.is_ok(), || format!("case {k}: d^2 on B: {v}"))?;
        let g = e(build_gamma(&q, &r, m))?;
        let v = check_d_squared(&g, opts);
        ensure(v.is_ok(), || format!("case {k}, m={m}: d^2 on Gamma: {v}"))?;
        let audit = e(generator_audit(&g, &r, m))?;
        ensure(audit_passes(&audit), || {
            format!("case {k}, m={m}: generator audit failed")
        })?;
        gammas.push(g);
    }

    let mut pairs = 0;
    while pairs < 200 {
        let g = &gammas[rng.gen_range(0..gammas.len())];
        let q = g.quiver();
        let (Some(x), Some(y)) = (
            random_homogeneous(&mut rng, q),
            random_homogeneous(&mut rng, q),
        ) else {
            continue;
        };
        let Homogeneity::Degree(dx) = x.homogeneous_degree() else {
            continue;
        };
        let xy = e(x.mul(&y))?;
        if xy.is_zero() {
            continue;
        }
        let lhs = e(g.apply_d(&xy))?;
        let sign = if dx.rem_euclid(2) == 0 {
            int(1)
        } else {
            int(-1)
        };
        let rhs = e(e(g.apply_d(&x))?.mul(&y))?
            .add(&e(x.mul(&e(g.apply_d(&y))?))?.scale(&sign))
            .unwrap();
        ensure(lhs == rhs, || format!("Leibniz fails for x = {x}, y = {y}"))?;
        pairs += 1;
    }

    let mut derivs = 0;
    for _ in 0..100 {
        let q = common::random_graded_quiver(&mut rng, 2, 4);
        let cycles: Vec<_> = q
            .enumerate_paths(4, None)
            .into_iter()
            .filter(|p| !p.is_empty() && q.is_cycle(p))
            .collect();
        if cycles.is_empty() {
            continue;
        }
        let deg = q.path_degree(&cycles[rng.gen_range(0..cycles.len())]);
        let mut x = PathElement::zero(&q);
        for p in cycles.iter().filter(|p| q.path_degree(p) == deg) {
            if rng.gen_bool(0.6) {
                x = x
                    .add(&PathElement::from_path(&q, p.clone()).scale(&int(rng.gen_range(-2..=2))))
                    .unwrap();
            }
        }
        let w = e(Superpotential::cyclic_reduce_with_degree(&x, deg))?;
        for a in q.arrows() {
            let d = e(w.cyclic_derivative(&a.id))?;
            ensure(d.homogeneous_degree().admits(deg - a.degree), || {
                format!(
                    "d_{} of {} has degree {:?}, expected {}",
                    a.id,
                    w.to_element(),
                    d.homogeneous_degree(),
                    deg - a.degree
                )
            })?;
            derivs += 1;
        }
    }
    Ok(format!(
        "50 d^2 and audit cases, 200 Leibniz pairs, {derivs} cyclic derivatives"
    ))
}

fn criterion_7() -> Outcome {
    let q = Arc::new(
        GradedQuiver::builder()
            .vertices(&["v1", "v2"])
            .arrow("a", "v1", "v2", 0)
            .build()
            .unwrap(),
    );
    let m = 3;
    let mut out = Vec::new();
    for ends in [
        [("v1", "v1"), ("v1", "v1"), ("v1", "v1")],
        [("v1", "v2"), ("v2", "v1"), ("v2", "v2")],
    ] {
        let r = zeros(&q, &ends);
        let g = e(build_gamma(&q, &r, m))?;
        let h = e(homology_dims(&g, m, 6))?;
        ensure(h.dims[&1] >= 3, || {
            format!("three zeros at {ends:?}: dims(1) = {}", h.dims[&1])
        })?;
        out.push(h.dims[&1]);
    }
    let g = e(build_gamma(&q, &RelationSequence::new(&q), m))?;
    let h = e(homology_dims(&g, m, 6))?;
    ensure(h.dims[&1] == 0, || {
        format!("R = {{}}: dims(1) = {}", h.dims[&1])
    })?;
    Ok(format!("dims(1) = {:?} with three zeros, 0 without", out))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        (
            "homology of the one-vertex quiver with R = {} and {0}",
            criterion_1,
        ),
        ("vosnex conditions on random acyclic quivers", criterion_2),
        (
            "dims(m-2) >= |R| and |system| >= ext2 on random admissible ideals",
            criterion_3,
        ),
        ("quaternion ideal", criterion_4),
        ("H0 presentations of the square", criterion_5),
        (
            "d^2, Leibniz, cyclic derivative degrees, generator audit",
            criterion_6,
        ),
        (
            "dimension gap for A2 with three zero relations",
            criterion_7,
        ),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = f();
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}) [{secs:.1}s]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {msg} [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
