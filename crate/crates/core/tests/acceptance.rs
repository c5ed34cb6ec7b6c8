//! One line per acceptance criterion. Run with
//! `cargo test -p dtensor --test acceptance`.
//!
//! Criteria listed in [`KNOWN_RED`] are expected to fail. The process exits
//! nonzero if any other criterion fails or if a known-red one starts passing.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use dtensor::comalg::FockVerifier;
use dtensor::comalg::{ClosedForm, StructureConstants, TensorPolynomial, Verdict};
use dtensor::fock::{FockSpace, OrbitalOrdering, SparseOperator};
use dtensor::lieclass::{self, build_jf_basis, check_relations, CartanName, FBasisPreset, Preset};
use dtensor::radix::RadicalNumber;
use dtensor::tensor::{all_labels, DoubleTensorLabel, TensorConvention, TensorSet};
use dtensor::wigner::HalfInt;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Decimal reference for the `[W(0,1,0,1), W(0,1,0,-1)]` coefficient.
const REFERENCE_DECIMAL: f64 = 0.2236;
const REFERENCE_TOLERANCE: f64 = 5e-5;
const RANDOM_TRIPLES: usize = 250;
const KNOWN_RED: &[u32] = &[5];

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn labels() -> Vec<DoubleTensorLabel> {
    all_labels(HalfInt::HALF, HalfInt::int(2))
}

fn odd_block() -> Vec<DoubleTensorLabel> {
    labels()
        .into_iter()
        .filter(|l| l.sigma == HalfInt::ZERO && l.k.twice() % 4 == 2)
        .collect()
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn oracle_equivalence() -> Outcome {
    let set = TensorSet::d_shell(TensorConvention::TimeReversed);
    let verifier = FockVerifier::new(set, ClosedForm::default()).map_err(err)?;
    let all = labels();
    let report = verifier.sweep(&all, &all).map_err(err)?;
    let summary = format!(
        "{} pairs, {} nonzero, overall {}, sector failures {}",
        report.pairs, report.nonzero_pairs, report.overall, report.sector_failures
    );
    let single_ratio = matches!(report.overall, Verdict::Ratio(_));
    if (report.overall.is_equal() || single_ratio) && report.sector_failures == 0 && report.pairs == 10_000 {
        Ok(summary)
    } else {
        Err(format!("{summary}; e.g. {}", report.examples.join("; ")))
    }
}

fn reference_constant() -> Outcome {
    let (a, b, target) = (
        DoubleTensorLabel::new(0, 1, 0, 1),
        DoubleTensorLabel::new(0, 1, 0, -1),
        DoubleTensorLabel::new(0, 1, 0, 0),
    );
    let set = TensorSet::d_shell(TensorConvention::TimeReversed);
    let verifier = FockVerifier::new(set, ClosedForm::default()).map_err(err)?;
    let pair = verifier.check_pair(a, b).map_err(err)?;
    let exact: RadicalNumber = "1/10*sqrt(5)".parse().map_err(err)?;
    let expected = TensorPolynomial::single(target).scale(&exact);
    let value = pair.closed.terms().next().map(|(_, c)| c.approx()).unwrap_or(0.0);
    let msg = format!("[{a}, {b}] = {} ≈ {value:.6}", pair.closed);
    if pair.closed == expected && pair.oracle == expected && (value - REFERENCE_DECIMAL).abs() <= REFERENCE_TOLERANCE {
        Ok(msg)
    } else {
        Err(format!("{msg}, oracle {}", pair.oracle))
    }
}

fn parity_selection() -> Outcome {
    let form = ClosedForm::default();
    let odd = odd_block();
    let mut terms = 0;
    for &a in &odd {
        for &b in &odd {
            for l in form.commutator(a, b).map_err(err)?.labels() {
                if l.sigma != HalfInt::ZERO || l.k.twice() % 4 != 2 {
                    return Err(format!("[{a}, {b}] contains {l}"));
                }
                terms += 1;
            }
        }
    }
    Ok(format!(
        "{} pairs, {terms} output terms, all σ''=0 with odd k''",
        odd.len() * odd.len()
    ))
}

fn b2_identification() -> Outcome {
    let form = ClosedForm::default();
    let basis = lieclass::preset(Preset::Sigma0OddK, &form).map_err(err)?;
    if !lieclass::check_closure(&basis.elements, &form)
        .map_err(err)?
        .is_closed()
    {
        return Err("sigma0-odd-k is not closed".into());
    }
    let c = lieclass::classify(&basis.elements, &form).map_err(err)?;
    let lens = c.geometry.squared_lengths();
    let ratio = match lens.as_slice() {
        [short, long] => long.checked_div(short).ok(),
        _ => None,
    };
    let msg = format!(
        "{} dim {} rank {} roots {} squared lengths [{}] killing nondegenerate {}",
        c.cartan_type.name,
        c.dim(),
        c.rank(),
        c.roots.len(),
        lens.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
        c.killing_nondegenerate
    );
    let ok = c.cartan_type.name == CartanName::B2
        && (c.dim(), c.rank(), c.roots.len()) == (10, 2, 8)
        && ratio == Some(RadicalNumber::from_integer(2))
        && c.killing_nondegenerate;
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn basis_relations() -> Outcome {
    let form = ClosedForm::default();
    let basis = build_jf_basis(FBasisPreset::Eigen, &form).map_err(err)?;
    let required = [("J1", "J-1"), ("F2", "F-2"), ("F1", "F-1"), ("F3", "F-3")];
    let checks = check_relations(&basis, &form).map_err(err)?;
    let relevant: Vec<_> = checks
        .iter()
        .filter(|c| required.contains(&(c.left.as_str(), c.right.as_str())))
        .collect();
    let failing: Vec<String> = relevant
        .iter()
        .filter(|c| !c.holds)
        .map(|c| format!("[{}, {}] = {} not {}", c.left, c.right, c.computed, c.expected))
        .collect();
    if relevant.len() == required.len() && failing.is_empty() {
        Ok("all four relations hold".into())
    } else {
        Err(failing.join("; "))
    }
}

fn wigner_suite() -> Outcome {
    let ladder = common::check_cg_ladder(4)?;
    let unitarity = common::check_cg_unitarity(8)?;
    let six_j = common::check_six_j_symmetry(6)?;
    Ok(format!(
        "{ladder} CG values vs ladder oracle, {unitarity} unitarity sums, {six_j} nonzero 6-j symbols"
    ))
}

fn fock_suite() -> Outcome {
    let space = FockSpace::d_shell();
    let id = SparseOperator::identity(space.dim());
    let orbs = space.orbitals().to_vec();
    let mut relations = 0;
    for (i, x) in orbs.iter().enumerate() {
        for (j, y) in orbs.iter().enumerate() {
            let mixed = space.annihilate(*x).anticommutator(&space.create(*y)).map_err(err)?;
            let ok = if i == j { mixed == id } else { mixed.is_zero() }
                && space
                    .annihilate(*x)
                    .anticommutator(&space.annihilate(*y))
                    .map_err(err)?
                    .is_zero()
                && space
                    .create(*x)
                    .anticommutator(&space.create(*y))
                    .map_err(err)?
                    .is_zero();
            if !ok {
                return Err(format!("anticommutators of orbitals {i}, {j}"));
            }
            relations += 1;
        }
    }
    let reversed_space = FockSpace::new(HalfInt::int(2), OrbitalOrdering::Reversed).map_err(err)?;
    let reversed = TensorSet::new(reversed_space, TensorConvention::TimeReversed).map_err(err)?;
    let verifier = FockVerifier::new(&reversed, ClosedForm::default()).map_err(err)?;
    let pair = verifier
        .check_pair(DoubleTensorLabel::new(0, 1, 0, 1), DoubleTensorLabel::new(0, 1, 0, -1))
        .map_err(err)?;
    let standard = TensorSet::d_shell(TensorConvention::TimeReversed);
    let standard_pair = FockVerifier::new(standard, ClosedForm::default())
        .map_err(err)?
        .oracle_commutator(pair.a, pair.b)
        .map_err(err)?;
    if pair.verdict.is_equal() && pair.oracle == standard_pair {
        Ok(format!(
            "{relations} orbital pairs; reversed ordering reproduces {}",
            pair.oracle
        ))
    } else {
        Err(format!("reversed ordering gives {} vs {standard_pair}", pair.oracle))
    }
}

fn algebraic_sanity() -> Outcome {
    let form = ClosedForm::default();
    let minus = RadicalNumber::from_integer(-1);
    let all = labels();
    for &a in &all {
        for &b in &all {
            if form.commutator(a, b).map_err(err)? != form.commutator(b, a).map_err(err)?.scale(&minus) {
                return Err(format!("[{a}, {b}] is not antisymmetric"));
            }
        }
    }
    let odd: Vec<TensorPolynomial> = odd_block().into_iter().map(TensorPolynomial::single).collect();
    let sc = StructureConstants::compute(&odd, &form).map_err(err)?;
    if !sc.satisfies_jacobi() {
        return Err("Jacobi fails on the odd block".into());
    }
    let one = RadicalNumber::one();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_d7e5);
    for _ in 0..RANDOM_TRIPLES {
        let t: Vec<TensorPolynomial> = all
            .choose_multiple(&mut rng, 3)
            .map(|l| TensorPolynomial::single(*l))
            .collect();
        let cyc = |x: &TensorPolynomial, y: &TensorPolynomial, z: &TensorPolynomial| {
            form.commutator_poly(&form.commutator_poly(x, y)?, z)
        };
        let j = cyc(&t[0], &t[1], &t[2])
            .map_err(err)?
            .add_scaled(&one, &cyc(&t[1], &t[2], &t[0]).map_err(err)?)
            .add_scaled(&one, &cyc(&t[2], &t[0], &t[1]).map_err(err)?);
        if !j.is_zero() {
            return Err(format!("Jacobi fails on {t:?}"));
        }
    }
    Ok(format!(
        "antisymmetry on 10000 pairs, Jacobi on 1000 odd-block triples and {RANDOM_TRIPLES} random triples"
    ))
}

fn span_completeness() -> Outcome {
    let rank = TensorSet::d_shell(TensorConvention::TimeReversed)
        .change_of_basis()
        .rank();
    if rank == 100 {
        Ok("rank 100".into())
    } else {
        Err(format!("rank {rank}"))
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (1, "oracle equivalence", oracle_equivalence),
        (2, "reference constant", reference_constant),
        (3, "parity selection", parity_selection),
        (4, "B2 identification", b2_identification),
        (5, "J/F basis relations", basis_relations),
        (6, "Wigner suite", wigner_suite),
        (7, "Fock suite", fock_suite),
        (8, "algebraic sanity", algebraic_sanity),
        (9, "span completeness", span_completeness),
    ];
    let mut unexpected = 0;
    for (n, name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        let known_red = KNOWN_RED.contains(&n);
        let (mark, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        let note = if known_red { " (known red)" } else { "" };
        println!("criterion {n} {mark}{note} {name}: {detail} [{secs:.1}s]");
        if outcome.is_ok() == known_red {
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} unexpected result(s)");
        ExitCode::FAILURE
    }
}
