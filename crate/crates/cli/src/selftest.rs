use std::thread;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rosecover::battery::{battery, battery_up_to, random_slide, BatteryCover};
use rosecover::cw_check::{
    commutator_lift_check, elevation_rank_obstruction, expected_isotypic_dim, isotypic_decomposition,
    verify_chevalley_weil,
};
use rosecover::edge_slide::{lifted_action_formula, lifted_action_oracle};
use rosecover::homology::{deck_action_matrix, orbit_rank};
use rosecover::orbit_mover::{move_vector, verify_certificate};
use rosecover::{CoverGraph, GroupFamily, HomologyBasis, MoveConfig, QMatrix, QVector, Rational, Word};

pub const SUITES: [&str; 4] = ["characters", "formula-oracle", "goldens", "mover"];

pub struct SuiteResult {
    pub name: &'static str,
    pub outcome: Result<String, String>,
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn one() -> Rational {
    Rational::from_integer(1.into())
}

fn characters(covers: &[BatteryCover], fault: bool) -> Result<String, String> {
    for c in covers {
        let b = HomologyBasis::new(&c.cover);
        let mut report = verify_chevalley_weil(&c.cover, &b);
        if fault {
            report.traces.0[0] += one();
            let expected = (c.cover.rank() - 1) * c.cover.vertex_count() + 1;
            report.verdict = report.traces.0[0] == Rational::from_integer(expected.into());
        }
        check(report.verdict, || format!("{}: traces {}", c.name(), report.traces))?;
        if c.cover.group().is_exponent_two_abelian() {
            let iso = isotypic_decomposition(&c.cover, &b).map_err(|e| e.to_string())?;
            check(iso.consistent(), || format!("{}: isotypic projectors", c.name()))?;
            let dims_ok =
                iso.characters.iter().zip(&iso.dims).all(|(chi, &d)| expected_isotypic_dim(&c.cover, chi) == d);
            check(dims_ok, || format!("{}: isotypic dims {:?}", c.name(), iso.dims))?;
        }
    }
    Ok(format!("{} covers", covers.len()))
}

fn formula_oracle(covers: &[BatteryCover], fault: bool) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut count = 0;
    for c in covers {
        let y = &c.cover;
        let b = HomologyBasis::new(y);
        let id = QMatrix::identity(b.rank());
        for _ in 0..2 {
            let slide = random_slide(y, &mut rng, 8);
            let formula = lifted_action_formula(&slide, y, &b).map_err(|e| e.to_string())?;
            let mut oracle = lifted_action_oracle(&slide, y, &b).map_err(|e| e.to_string())?;
            if fault {
                let bumped = oracle.get(0, 0) + one();
                oracle.set(0, 0, bumped);
            }
            let tag = || format!("{} slide a{} -> {}.a{}", c.name(), slide.petal(), slide.ell(), slide.petal());
            check(formula.matrix == oracle, || format!("{}: formula differs from oracle", tag()))?;
            for g in y.vertices() {
                let rho = deck_action_matrix(y, &b, g);
                check(&rho * &oracle == &oracle * &rho, || format!("{}: not equivariant", tag()))?;
            }
            let nil = &oracle - &id;
            check((&nil * &nil).is_zero(), || format!("{}: not unipotent of order 2", tag()))?;
            count += 1;
        }
    }
    Ok(format!("{count} slides"))
}

fn goldens(fault: bool) -> Result<String, String> {
    let g = GroupFamily::ElementaryAbelian { p: 2, k: 2 }.build().map_err(|e| e.to_string())?;
    let y = CoverGraph::from_parts(g, vec![1, 2]).map_err(|e| e.to_string())?;
    let b = HomologyBasis::new(&y);
    let expected_rank = if fault { 6 } else { 5 };
    check(b.rank() == expected_rank, || format!("mod-2 cover has rank {}", b.rank()))?;
    let iso = isotypic_decomposition(&y, &b).map_err(|e| e.to_string())?;
    let mut dims = iso.dims.clone();
    dims.sort_unstable_by(|a, b| b.cmp(a));
    check(dims == [2, 1, 1, 1], || format!("isotypic dims {:?}", iso.dims))?;
    let w: Word = "a.a.a.b^-1.a.b".parse().map_err(|e: rosecover::WordError| e.to_string())?;
    let x = b.path_class(&y, &y.lift_word(&w, 0)).map_err(|e| e.to_string())?;
    check(orbit_rank(&y, &b, &x) == 4, || "orbit rank of a^3b^-1ab".into())?;
    let comm = commutator_lift_check(&y, &b).map_err(|e| e.to_string())?;
    check(comm.lifts && comm.class_nonzero, || "commutator lift".into())?;
    for word in ["a", "b", "a.b"] {
        let r = elevation_rank_obstruction(&y, &b, &word.parse().unwrap()).map_err(|e| e.to_string())?;
        check(r.obstructed && r.component_count == 2, || format!("obstruction for {word}"))?;
    }
    Ok("mod-2 cover".into())
}

fn mover(covers: &[BatteryCover], fault: bool) -> Result<String, String> {
    let mut count = 0;
    for c in covers.iter().filter(|c| c.cover.rank() >= 3) {
        let y = &c.cover;
        let b = HomologyBasis::new(y);
        let ones = QVector(vec![one(); b.rank()]);
        for v in [QVector::unit(b.rank(), 0), QVector::unit(b.rank(), b.rank() - 1), ones] {
            let mut cert = move_vector(y, &b, &v, &MoveConfig::default()).map_err(|e| format!("{}: {e}", c.name()))?;
            if fault {
                cert.increment = cert.increment.scale(&Rational::from_integer(2.into()));
            }
            let verdict = verify_certificate(y, &b, &v, &cert);
            check(verdict.passed, || format!("{}: {}", c.name(), verdict.failures.join(", ")))?;
            count += 1;
        }
    }
    Ok(format!("{count} certificates"))
}

/// Runs every suite, concurrently, and returns results ordered by suite name.
pub fn run(quick: bool, fault: Option<&str>) -> Vec<SuiteResult> {
    let covers = if quick { battery_up_to(8) } else { battery() };
    let faulty = |name: &str| fault == Some(name);
    thread::scope(|s| {
        let handles: Vec<_> = SUITES
            .iter()
            .map(|&name| {
                let covers = &covers;
                let fault = faulty(name);
                s.spawn(move || {
                    let outcome = match name {
                        "characters" => characters(covers, fault),
                        "formula-oracle" => formula_oracle(covers, fault),
                        "goldens" => goldens(fault),
                        _ => mover(covers, fault),
                    };
                    SuiteResult { name, outcome }
                })
            })
            .collect();
        handles
            .into_iter()
            .zip(SUITES)
            .map(|(h, name)| h.join().unwrap_or_else(|_| SuiteResult { name, outcome: Err("panicked".into()) }))
            .collect()
    })
}
