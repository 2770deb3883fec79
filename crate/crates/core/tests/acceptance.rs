//! Acceptance criteria: one PASS/FAIL line per criterion, nonzero exit
//! if any fails.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bigraded_core::actions::{
    cartan_report, delta_operator, homotopy_coefficients, induced_on_cohomology, lie_derivative, ActionError,
};
use bigraded_core::cohomology::{
    derham, dolbeault, duality_report, frolicher_check, natural_maps, verify_five_term, Flavor, Key, BC_TO_DR,
};
use bigraded_core::complexes::random::{random_suite, RandomParams};
use bigraded_core::complexes::structural_identities;
use bigraded_core::models::{build, catalog, find, BuiltModel};
use bigraded_core::vaisman::{build_cone, crosscheck, verify_cone_les};
use bigraded_core::{Bicomplex, Bidegree, BigradedSpace, GaussianRational};

use common::{binomial, library_tables, HOPF2, HOPF3};

const SEED: u64 = 0x5eed_2024;
const RANDOM_COUNT: usize = 200;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn model(name: &str) -> BuiltModel {
    build(&find(name).expect("catalog model")).expect("catalog model builds")
}

fn all_models() -> Vec<BuiltModel> {
    catalog()
        .iter()
        .map(|s| build(s).expect("catalog model builds"))
        .collect()
}

fn randoms() -> Vec<Bicomplex> {
    random_suite(SEED, RANDOM_COUNT, &RandomParams::default())
}

fn structural_identities_hold() -> Outcome {
    let start = Instant::now();
    let models = all_models();
    let mut checked = 0;
    for m in &models {
        let r = structural_identities(&m.bicomplex).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("{}: {:?}", m.name, r.failures()))?;
        checked += 1;
    }
    for (k, b) in randoms().iter().enumerate() {
        let r = structural_identities(b).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("random #{k}: {:?}", r.failures()))?;
        checked += 1;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!("{checked} complexes in {:.2}s", elapsed.as_secs_f64()))
}

fn torus_controls() -> Outcome {
    for n in 1..=3 {
        let t = library_tables(&model(&format!("torus{n}")).bicomplex);
        for p in 0..=n {
            for q in 0..=n {
                let want = binomial(n, p) * binomial(n, q);
                for (flavor, table) in [
                    ("dolbeault", &t.dolbeault),
                    ("anti", &t.anti),
                    ("bc", &t.bott_chern),
                    ("aeppli", &t.aeppli),
                ] {
                    ensure(table[&(p, q)] == want, || {
                        format!("torus{n} {flavor} ({p},{q}) = {}, want {want}", table[&(p, q)])
                    })?;
                }
            }
        }
        let betti: Vec<usize> = (0..=2 * n).map(|k| binomial(2 * n, k)).collect();
        ensure(t.betti == betti, || format!("torus{n} betti {:?}", t.betti))?;
    }
    Ok("n = 1, 2, 3".into())
}

fn iwasawa_values() -> Outcome {
    let b = model("iwasawa").bicomplex;
    let t = library_tables(&b);
    let got = (
        t.dolbeault[&(1, 0)],
        t.dolbeault[&(0, 1)],
        t.bott_chern[&(1, 0)],
        t.betti[1],
    );
    ensure(got == (3, 2, 2, 4), || format!("(h10, h01, bc10, b1) = {got:?}"))?;
    let f = frolicher_check(&b).map_err(|e| e.to_string())?;
    let row = &f.rows[1];
    ensure(f.holds() && f.strict_degrees().contains(&1), || f.to_string())?;
    ensure((row.betti, row.hodge_sum) == (4, 5), || f.to_string())?;
    Ok(format!(
        "h10=3 h01=2 bc10=2 b1=4; k=1: {} < {}",
        row.betti, row.hodge_sum
    ))
}

fn five_term_exact() -> Outcome {
    let models = all_models();
    for m in &models {
        verify_five_term(&m.bicomplex).map_err(|e| format!("{}: {e}", m.name))?;
    }
    for (k, b) in randoms().iter().enumerate() {
        verify_five_term(b).map_err(|e| format!("random #{k}: {e}"))?;
    }
    Ok(format!("{} catalog + {RANDOM_COUNT} random", models.len()))
}

fn duality() -> Outcome {
    for name in ["torus1", "torus2", "torus3", "iwasawa", "kodaira_thurston", "hopf2"] {
        let m = model(name);
        let r = duality_report(&m.bicomplex, m.n()).map_err(|e| e.to_string())?;
        ensure(r.matched(), || format!("{name}: {r}"))?;
    }
    let dims = BTreeMap::from([
        (Bidegree::new(0, 0), 2),
        (Bidegree::new(1, 0), 1),
        (Bidegree::new(0, 1), 1),
        (Bidegree::new(1, 1), 1),
    ]);
    let skew = Bicomplex::trivial(BigradedSpace::from_dims(1, &dims).unwrap(), true);
    let r = duality_report(&skew, 1).map_err(|e| e.to_string())?;
    ensure(!r.matched() && !r.warnings.is_empty(), || {
        "violating complex not flagged".into()
    })?;
    Ok(format!("6 models matched; synthetic complex warns: {}", r.warnings[0]))
}

fn cartan_identities() -> Outcome {
    let mut count = 0;
    for m in all_models() {
        for c in &m.contractions {
            let r = cartan_report(&m.bicomplex, c).map_err(|e| e.to_string())?;
            ensure(r.passed(), || format!("{} / {}: {r:?}", m.name, c.name()))?;
            count += 1;
        }
    }
    ensure(count > 0, || "no contractions".into())?;
    Ok(format!("{count} contractions"))
}

fn action_verdicts() -> Outcome {
    let iw = model("iwasawa");
    let b = &iw.bicomplex;
    let verdict = |m: &BuiltModel, field: &str| {
        let l = lie_derivative(&m.bicomplex, m.contraction(field).unwrap()).unwrap();
        induced_on_cohomology(&m.bicomplex, &l.operator).unwrap()
    };
    ensure(verdict(&iw, "central").is_trivial(), || {
        "central field acts nontrivially".into()
    })?;
    let v = verdict(&iw, "phi1-dual");
    let dol = v.flavor(Flavor::Dolbeault).expect("dolbeault verdict");
    let key = Key::Slot(Bidegree::new(1, 0));
    ensure(dol.nontrivial_keys().contains(&key), || {
        "phi1-dual trivial on H^(1,0)".into()
    })?;
    let table = dolbeault(b).unwrap();
    let labels = b.space().labels(Bidegree::new(1, 0));
    let reps = table.representatives(key);
    let unit = |name: &str| {
        let at = labels.iter().position(|l| l == name).expect("label");
        reps.iter().position(|r| {
            r.iter()
                .enumerate()
                .all(|(i, c)| if i == at { c.is_one() } else { c.is_zero() })
        })
    };
    let (Some(j3), Some(j2)) = (unit("phi3"), unit("phi2")) else {
        return Err("representatives are not the generators".into());
    };
    let image = dol.maps[&key].column(j3);
    let minus_one = -GaussianRational::one();
    ensure(
        image
            .iter()
            .enumerate()
            .all(|(i, c)| if i == j2 { *c == minus_one } else { c.is_zero() }),
        || format!("[phi3] maps to {image:?}"),
    )?;
    ensure(verdict(&model("hopf2"), "lee").is_trivial(), || {
        "Lee field acts nontrivially".into()
    })?;
    Ok("central trivial; phi1-dual: [phi3] -> -[phi2]; hopf2 Lee trivial".into())
}

fn homotopy_coefficients_solve() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let iw = model("iwasawa");
    let mut solved = 0;
    while solved < 100 {
        let mut pick = || GaussianRational::from_ints(rng.gen_range(-4..=4), rng.gen_range(-4..=4));
        let (a, b) = (pick(), pick());
        if (&(&a * &a) + &(&b * &b)).is_zero() {
            continue;
        }
        let s = homotopy_coefficients(&a, &b).map_err(|e| format!("({a}, {b}): {e}"))?;
        let (r1, r2) = s.residuals(&a, &b);
        ensure(r1.is_zero() && r2.is_zero(), || {
            format!("({a}, {b}): residuals {r1}, {r2}")
        })?;
        if solved % 10 == 0 {
            delta_operator(&iw.bicomplex, &a, &b).map_err(|e| e.to_string())?;
        }
        solved += 1;
    }
    let g = |s: &str| s.parse::<GaussianRational>().unwrap();
    for (a, b) in [("1", "i"), ("2i", "2"), ("0", "0"), ("(1+i)", "(1-i)")] {
        match homotopy_coefficients(&g(a), &g(b)) {
            Err(ActionError::Degenerate { .. } | ActionError::BothZero) => {}
            other => return Err(format!("({a}, {b}) not rejected: {other:?}")),
        }
    }
    Ok("100 admissible pairs solved; 4 degenerate pairs rejected".into())
}

fn vaisman_pipeline() -> Outcome {
    let start = Instant::now();
    for (n, golden) in [(2, &HOPF2), (3, &HOPF3)] {
        let m = model(&format!("hopf{n}"));
        let vm = m.vaisman.as_ref().expect("vaisman model");
        let les = verify_cone_les(&build_cone(vm).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(les.passed(), || format!("hopf{n}: cone sequence"))?;
        let c = crosscheck(vm).map_err(|e| e.to_string())?;
        ensure(c.passed(), || format!("hopf{n}:\n{c}"))?;
        for row in &c.rows {
            let want = golden.dolbeault[row.slot.p][row.slot.q];
            ensure(row.direct == want, || {
                format!("hopf{n} {}: {} != {want}", row.slot, row.direct)
            })?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "hopf2, hopf3 agree; sequences exact; {:.2}s",
        elapsed.as_secs_f64()
    ))
}

fn hopf2_derham_and_bc_kernel() -> Outcome {
    let b = model("hopf2").bicomplex;
    let dr = derham(&b).map_err(|e| e.to_string())?;
    let betti: Vec<usize> = (0..=4).map(|k| dr.degree_dim(k)).collect();
    ensure(betti == [1, 1, 0, 1, 1], || format!("betti {betti:?}"))?;
    let maps = natural_maps(&b).map_err(|e| e.to_string())?;
    let m = maps
        .find(BC_TO_DR, Key::Slot(Bidegree::new(1, 1)))
        .ok_or("no BC -> dR map at (1,1)")?;
    ensure(m.kernel_dim() == 1, || format!("kernel dim {}", m.kernel_dim()))?;
    Ok("betti 1 1 0 1 1; ker(BC^(1,1) -> H^2) = 1".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "structural identities on catalog and random suite",
            structural_identities_hold,
        ),
        ("torus controls", torus_controls),
        ("iwasawa invariants and strict Frolicher inequality", iwasawa_values),
        ("five-term sequence exact", five_term_exact),
        ("Bott-Chern/Aeppli duality", duality),
        ("Cartan identities", cartan_identities),
        ("action verdicts", action_verdicts),
        ("homotopy coefficients", homotopy_coefficients_solve),
        ("Vaisman pipeline", vaisman_pipeline),
        ("hopf2 de Rham and BC kernel", hopf2_derham_and_bc_kernel),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, (title, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS {:>2} {title}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {title}: {detail}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
