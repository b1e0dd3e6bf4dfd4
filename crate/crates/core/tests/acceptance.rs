use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use rescurrent::cli::{run_corpus, Options};
use rescurrent::groebner::{Codim, Ideal, QuotientContext};
use rescurrent::homalg::{
    buchsbaum_eisenbud_check, cohen_macaulay_check, detect_periodicity, equal_up_to_units, extend_ring,
    free_resolution, koszul_complex, proper_intersection_check, rank_loci, tensor_complexes, DEFAULT_CAP,
};
use rescurrent::polyring::{poly_parse, Monomial, PolyMatrix, Polynomial, PolynomialRing};
use rescurrent::residues::{
    annihilator_member, build_current_recipe, chain_homotopy, coleff_herrera, maximal_lifting, poincare_residue,
    regular_sequence_check, structure_form_shape, verify_homotopy, ChainMap, Component, ShapeComponent,
};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn ring(vars: &[&str]) -> PolynomialRing {
    PolynomialRing::grevlex(vars).unwrap()
}

fn p(r: &PolynomialRing, s: &str) -> Polynomial {
    poly_parse(s, r).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn ps(r: &PolynomialRing, gens: &[&str]) -> Vec<Polynomial> {
    gens.iter().map(|g| p(r, g)).collect()
}

fn ideal(r: &PolynomialRing, gens: &[&str]) -> Ideal {
    Ideal::new(r, ps(r, gens)).unwrap()
}

fn mat(r: &PolynomialRing, rows: &[&[&str]]) -> PolyMatrix {
    PolyMatrix::from_rows(r, rows.iter().map(|row| ps(r, row)).collect()).unwrap()
}

fn cusp() -> Outcome {
    let r = ring(&["z", "w"]);
    let z = QuotientContext::from_gens(&r, ps(&r, &["z^3 - w^2"])).unwrap();
    let j = ideal(&r, &["z", "w"]);
    ensure!(maximal_lifting(&j, &z).unwrap().same_ideal(&j).unwrap(), "maximal lifting differs from (z, w)");
    let recipe = build_current_recipe(&z, &j).unwrap();
    ensure!(recipe.e.ranks() == [1, 2, 1], "E has ranks {:?}", recipe.e.ranks());
    ensure!(equal_up_to_units(&recipe.e.diffs()[0], &mat(&r, &[&["z", "w"]])), "phi_1 = {}", recipe.e.diffs()[0]);
    ensure!(equal_up_to_units(&recipe.e.diffs()[1], &mat(&r, &[&["-w"], &["z"]])), "phi_2 = {}", recipe.e.diffs()[1]);

    // a_1 = (z^2, -w)^T is a chain map once phi_1 is written as (z w)
    let phi1 = &recipe.e.diffs()[0];
    let sign = if *phi1 == mat(&r, &[&["z", "w"]]) { "" } else { "-" };
    let a1 = mat(&r, &[&[&format!("{sign}z^2")], &[&format!("{sign}(-w)")]]);
    let reference = ChainMap::new(&recipe.f, &recipe.e, vec![PolyMatrix::identity(&r, 1), a1.clone()]).unwrap();
    let s = chain_homotopy(&recipe.a, &reference).unwrap();
    ensure!(verify_homotopy(&recipe.a, &reference, &s).unwrap(), "homotopy certificate rejected");
    // independent recheck of the certificate at level 1: a'_1 - a_1 = phi_2 s_1 + s_0 psi_1
    let lhs = a1.sub(recipe.a.level(1).unwrap()).unwrap();
    let rhs =
        recipe.e.diffs()[1].mul(&s.maps()[1]).unwrap().add(&s.maps()[0].mul(&recipe.f.diffs()[0]).unwrap()).unwrap();
    ensure!(z.reduce_matrix(&lhs.sub(&rhs).unwrap()).unwrap().is_zero(), "level-1 homotopy identity fails");

    let shifted = a1.add(&recipe.e.diffs()[1].mul(&mat(&r, &[&["z*w"]])).unwrap()).unwrap();
    let moved = ChainMap::new(&recipe.f, &recipe.e, vec![PolyMatrix::identity(&r, 1), shifted]).unwrap();
    let s2 = chain_homotopy(&reference, &moved).unwrap();
    ensure!(!s2.is_zero() && verify_homotopy(&reference, &moved, &s2).unwrap(), "shifted map: {:?}", s2.maps());

    for (g, want) in [("z", true), ("w", true), ("1", false), ("z^3 - w^2", true), ("z + 1", false)] {
        let got = annihilator_member(&recipe, &p(&r, g)).unwrap();
        ensure!(got == want, "annihilator oracle on {g}: {got}");
    }
    Ok(format!("a_1 = {} ~ (z^2, -w)^T, homotopy s_1 = {}", recipe.a.level(1).unwrap(), s.maps()[1]))
}

fn residue() -> Outcome {
    let r = ring(&["z", "w"]);
    let h = p(&r, "z^3 - w^2");
    let om = poincare_residue(&h, "w").unwrap();
    ensure!(om.numerator == p(&r, "1"), "numerator {}", om.numerator);
    ensure!(om.denominator == p(&r, "2*w"), "denominator {}", om.denominator);
    ensure!(om.wedge == [0] && om.twopi_exponent == 1, "wedge {:?}, exponent {}", om.wedge, om.twopi_exponent);
    ensure!(om.satisfies_defining_relation(&h).unwrap(), "defining relation fails");
    // dh ∧ (num dz) = -(dh/dw) num dz∧dw, which must equal denom dz∧dw mod h
    let wedge = -(&h.derivative(1) * &om.numerator);
    let z = QuotientContext::from_gens(&r, vec![h.clone()]).unwrap();
    ensure!(z.is_zero(&(&wedge - &om.denominator)).unwrap(), "hand-computed wedge {wedge}");
    Ok(om.to_text())
}

fn plane_and_line() -> Outcome {
    let r = ring(&["x", "y", "z"]);
    let i = ideal(&r, &["x*z", "y*z"]);
    let res = free_resolution(&i, None, DEFAULT_CAP, true).unwrap();
    ensure!(res.ranks() == [1, 2, 1], "ranks {:?}", res.ranks());
    ensure!(equal_up_to_units(&res.diffs()[1], &mat(&r, &[&["-y"], &["x"]])), "phi_2 = {}", res.diffs()[1]);
    let loci = rank_loci(&res).unwrap();
    ensure!(loci.codims == [Codim::Finite(1), Codim::Finite(2)], "locus codims {:?}", loci.codims);
    ensure!(buchsbaum_eisenbud_check(&res).unwrap().passed, "exactness criterion fails");
    let cm = cohen_macaulay_check(&i).unwrap();
    ensure!(!cm.cohen_macaulay && cm.length == 2 && cm.codim == Codim::Finite(1), "{cm:?}");
    let ctx = QuotientContext::new(i.clone());
    let decomposition =
        [Component { ideal: ideal(&r, &["z"]), dim: 2 }, Component { ideal: ideal(&r, &["x", "y"]), dim: 1 }];
    let shape = structure_form_shape(&ctx, Some(&decomposition)).unwrap();
    let got: Vec<(usize, usize)> = shape
        .components
        .iter()
        .map(|c| match c {
            ShapeComponent::Mixed { e, level, .. } => (*e, *level),
            ShapeComponent::Pure { r, level, .. } => (usize::MAX - r, *level),
        })
        .collect();
    ensure!(got == [(2, 1), (1, 2)], "shape components {got:?}");
    ensure!(shape.locus_checks.iter().all(|c| c.ok), "locus checks {:?}", shape.locus_checks);
    Ok(format!(
        "ranks [1, 2, 1], codims (1, 2), CM false (length {} vs codim 1), components (e=2, F_1), (e=1, F_2)",
        cm.length
    ))
}

fn periodic() -> Outcome {
    let r = ring(&["x", "y"]);
    let ctx = QuotientContext::from_gens(&r, ps(&r, &["x*y"])).unwrap();
    let res = free_resolution(&ideal(&r, &["x"]), Some(&ctx), 6, true).unwrap();
    ensure!(
        res.is_truncated() && res.num_levels() == 6,
        "levels {}, truncated {}",
        res.num_levels(),
        res.is_truncated()
    );
    let (mx, my) = (mat(&r, &[&["x"]]), mat(&r, &[&["y"]]));
    for (k, d) in res.diffs().iter().enumerate() {
        let want = if k % 2 == 0 { &mx } else { &my };
        ensure!(equal_up_to_units(d, want), "phi_{} = {d}", k + 1);
    }
    let report = detect_periodicity(&res).unwrap();
    ensure!(report.detected && report.offset == 0 && report.period == 2, "{report:?}");
    let loci = rank_loci(&res).unwrap();
    let (ix, iy) = (ideal(&r, &["x"]), ideal(&r, &["y"]));
    for k in 1..=res.num_levels() {
        let with_z = loci.locus(k).unwrap().sum(ctx.ideal()).unwrap();
        let want = if k % 2 == 1 { &ix } else { &iy };
        ensure!(with_z.same_ideal(want).unwrap(), "Z_{k} + I_Z = {:?}", with_z.gens());
    }
    Ok("phi alternates (x), (y); offset 0, period 2; loci (x) odd, (y) even".into())
}

fn tensor_blocks() -> Outcome {
    let r2 = ring(&["z", "w"]);
    let r3 = ring(&["z", "w", "t"]);
    let e = extend_ring(&koszul_complex(&ps(&r2, &["z", "w"]), None).unwrap(), &r3).unwrap();
    let d = koszul_complex(&ps(&r3, &["t"]), None).unwrap();
    let g = tensor_complexes(&e, &d).unwrap();
    let t = p(&r3, "t");
    // independent assembly of eta_k = [[phi_k, (-1)^(k-1) t Id], [0, phi_{k-1}]] on E_k ⊕ E_{k-1}
    let phi = |k: usize| -> Option<&PolyMatrix> { e.differential(k) };
    let mut expected = Vec::new();
    for k in 1..=3usize {
        let (ek, ek1, ek2) = (e.rank(k), e.rank(k - 1), if k >= 2 { e.rank(k - 2) } else { 0 });
        let (rows, cols) = (ek1 + ek2, ek + ek1);
        let mut m = PolyMatrix::zero(&r3, rows, cols);
        if let Some(pk) = phi(k) {
            for i in 0..ek1 {
                for j in 0..ek {
                    m.set(i, j, pk.get(i, j).clone());
                }
            }
        }
        let st = if k % 2 == 1 { t.clone() } else { -&t };
        for i in 0..ek1 {
            m.set(i, ek + i, st.clone());
        }
        if k >= 2 {
            if let Some(pk1) = phi(k - 1) {
                for i in 0..ek2 {
                    for j in 0..ek1 {
                        m.set(ek1 + i, ek + j, pk1.get(i, j).clone());
                    }
                }
            }
        }
        expected.push(m);
    }
    ensure!(g.ranks() == [1, 3, 3, 1], "ranks {:?}", g.ranks());
    for (k, want) in expected.iter().enumerate() {
        ensure!(g.diffs()[k] == *want, "eta_{} = {} expected {}", k + 1, g.diffs()[k], want);
    }
    ensure!(g.diffs()[0] == mat(&r3, &[&["z", "w", "t"]]), "eta_1 = {}", g.diffs()[0]);
    ensure!(g.verify().unwrap(), "eta^2 != 0");
    Ok(format!("eta_2 = {}, eta_3 = {}", g.diffs()[1], g.diffs()[2]))
}

fn be_suite() -> Outcome {
    let cases: [(&[&str], &[&str]); 15] = [
        (&["x"], &["x"]),
        (&["x", "y"], &["x", "y"]),
        (&["x", "y"], &["x^2", "x*y", "y^2"]),
        (&["x", "y"], &["x^3 - y^2"]),
        (&["x", "y"], &["x^2", "y^3"]),
        (&["x", "y"], &["x*y", "x^2"]),
        (&["x", "y", "z"], &["x", "y", "z"]),
        (&["x", "y", "z"], &["x*z", "y*z"]),
        (&["x", "y", "z"], &["x*y", "y*z", "x*z"]),
        (&["x", "y", "z"], &["x^2", "y^2", "z^2", "x*y*z"]),
        (&["x", "y", "z"], &["x*y - z^2", "x*z - y^2", "y*z - x^2"]),
        (&["x", "y", "z"], &["x*z - y^2", "x^3 - y*z", "z^2 - x^2*y"]),
        (&["x", "y", "z"], &["x^2 + y^2 + z^2"]),
        (&["x", "y", "z"], &["x", "y*z"]),
        (&["x", "y", "z"], &["x^2", "x*y", "x*z", "y^3"]),
    ];
    let mut lengths = Vec::new();
    for (vars, gens) in cases {
        let r = ring(vars);
        let res = free_resolution(&ideal(&r, gens), None, DEFAULT_CAP, true).unwrap();
        ensure!(!res.is_truncated() && res.verify().unwrap(), "{gens:?}: not a finite complex");
        let be = buchsbaum_eisenbud_check(&res).unwrap();
        ensure!(be.passed, "{gens:?}: criterion fails at {:?}", be.failing_level);
        lengths.push(res.length());
    }
    let r = ring(&["x"]);
    let kxx = koszul_complex(&ps(&r, &["x", "x"]), None).unwrap();
    let be = buchsbaum_eisenbud_check(&kxx).unwrap();
    ensure!(!be.passed && be.failing_level == Some(2), "Koszul(x, x): {be:?}");
    Ok(format!("15/15 minimal resolutions exact (lengths {lengths:?}); Koszul(x, x) fails at k=2"))
}

fn random_poly(rng: &mut StdRng, r: &PolynomialRing, max_deg: u32) -> Polynomial {
    let n = r.nvars();
    let terms: Vec<_> = (0..rng.gen_range(1..=3))
        .map(|_| {
            let mut exps = vec![0u32; n];
            for _ in 0..rng.gen_range(0..=max_deg) {
                exps[rng.gen_range(0..n)] += 1;
            }
            let c = rng.gen_range(-3i64..=3);
            (Monomial::new(exps), rescurrent::polyring::rat(if c == 0 { 1 } else { c }, 1))
        })
        .collect();
    Polynomial::from_terms(r, terms)
}

fn duality() -> Outcome {
    let cases: [(&[&str], &[&str], &[&str]); 10] = [
        (&["x", "y", "z"], &[], &["x", "y"]),
        (&["x", "y", "z"], &[], &["x^2", "y^3"]),
        (&["x", "y", "z"], &[], &["x + y^2", "z"]),
        (&["x", "y", "z"], &[], &["x*y - z", "y"]),
        (&["x", "y", "z"], &[], &["x", "y", "z"]),
        (&["z", "w"], &["z^3 - w^2"], &["z"]),
        (&["z", "w"], &["z^3 - w^2"], &["w"]),
        (&["x", "y", "z"], &["x*y"], &["x + y", "z"]),
        (&["x", "y", "z"], &["x^2 + y^2 - z^2"], &["x", "y"]),
        (&["z", "w"], &["w^2 - z^3 - z"], &["z^2 + w"]),
    ];
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut total = 0;
    for (vars, rel, tuple) in cases {
        let r = ring(vars);
        let ctx = QuotientContext::from_gens(&r, ps(&r, rel)).unwrap();
        let f = ps(&r, tuple);
        let ctx_opt = if rel.is_empty() { None } else { Some(&ctx) };
        ensure!(regular_sequence_check(&f, ctx_opt).unwrap().regular, "{tuple:?} over {rel:?} not regular");
        let ch = coleff_herrera(&f, ctx_opt).unwrap();
        let recipe = build_current_recipe(&ctx, &Ideal::new(&r, f.clone()).unwrap()).unwrap();
        let full = Ideal::new(&r, f.iter().chain(ctx.ideal().gens()).cloned().collect()).unwrap();
        let mut queries = 0;
        while queries < 120 {
            let mut member = Polynomial::zero(&r);
            for fi in f.iter().chain(ctx.ideal().gens()) {
                member = &member + &(&random_poly(&mut rng, &r, 2) * fi);
            }
            let noise = full.normal_form(&random_poly(&mut rng, &r, 3)).unwrap();
            let mut candidates = vec![(member.clone(), Some(true))];
            if !noise.is_zero() {
                candidates.push((&member + &noise, Some(false)));
            }
            candidates.push((random_poly(&mut rng, &r, 3), None));
            for (g, label) in candidates {
                let a = ch.annihilates(&g).unwrap();
                let b = annihilator_member(&recipe, &g).unwrap();
                ensure!(a == b, "{tuple:?} over {rel:?}: oracles disagree on {g}");
                if let Some(want) = label {
                    ensure!(a == want, "{tuple:?} over {rel:?}: {g} should be {want}");
                }
                queries += 1;
            }
        }
        total += queries;
    }
    Ok(format!("10 sequences, {total} queries, 100% agreement"))
}

fn proper() -> Outcome {
    let r = ring(&["x", "y", "z"]);
    let c = free_resolution(&ideal(&r, &["x", "y"]), None, DEFAULT_CAP, true).unwrap();
    let d = koszul_complex(&ps(&r, &["z"]), None).unwrap();
    let good = proper_intersection_check(&c, &d, 1, 1).unwrap();
    ensure!(good.proper && good.witness.is_none(), "{good:?}");
    let kx = koszul_complex(&ps(&r, &["x"]), None).unwrap();
    let bad = proper_intersection_check(&kx, &kx, 1, 1).unwrap();
    ensure!(!bad.proper && bad.witness == Some((1, 1, Codim::Finite(1))), "{bad:?}");
    Ok("(x, y) vs (z) proper; (x) vs (x) fails at (1, 1) with codim 1".into())
}

fn determinism() -> Outcome {
    let a = run_corpus(Options::default());
    ensure!(a.succeeded(), "corpus exit {}", a.exit_code);
    let b = run_corpus(Options::default());
    let (ja, jb) = (a.to_json_string(), b.to_json_string());
    ensure!(ja == jb, "corpus JSON differs between runs");
    Ok(format!("{} statements, {} bytes, identical", a.entries.len(), ja.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("cusp recipe, lifting, homotopy, annihilator", cusp),
        ("Poincare residue of z^3 - w^2", residue),
        ("resolution of (xz, yz)", plane_and_line),
        ("periodic resolution over Q[x,y]/(xy)", periodic),
        ("tensor block structure", tensor_blocks),
        ("Buchsbaum-Eisenbud suite", be_suite),
        ("duality oracle equivalence", duality),
        ("proper intersection", proper),
        ("corpus determinism", determinism),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        let ms = t.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({ms} ms): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({ms} ms): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} passed in {} ms", criteria.len() - failed, criteria.len(), start.elapsed().as_millis());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
