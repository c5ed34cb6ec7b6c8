use dtensor::comalg::{ClosedForm, StructureConstants, TensorPolynomial};
use dtensor::error::Error;
use dtensor::radix::RadicalNumber;
use dtensor::tensor::{all_labels, DoubleTensorLabel};
use dtensor::wigner::HalfInt;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn labels() -> Vec<DoubleTensorLabel> {
    all_labels(HalfInt::HALF, HalfInt::int(2))
}

fn sigma0_odd_k() -> Vec<DoubleTensorLabel> {
    labels()
        .into_iter()
        .filter(|l| l.sigma == HalfInt::ZERO && l.k.twice() % 4 == 2)
        .collect()
}

fn jacobiator(form: &ClosedForm, a: &TensorPolynomial, b: &TensorPolynomial, c: &TensorPolynomial) -> TensorPolynomial {
    let one = RadicalNumber::one();
    let t1 = form.commutator_poly(&form.commutator_poly(a, b).unwrap(), c).unwrap();
    let t2 = form.commutator_poly(&form.commutator_poly(b, c).unwrap(), a).unwrap();
    let t3 = form.commutator_poly(&form.commutator_poly(c, a).unwrap(), b).unwrap();
    t1.add_scaled(&one, &t2).add_scaled(&one, &t3)
}

#[test]
fn antisymmetric_and_projection_additive_over_all_pairs() {
    let form = ClosedForm::default();
    let minus = RadicalNumber::from_integer(-1);
    for &a in &labels() {
        for &b in &labels() {
            let ab = form.commutator(a, b).unwrap();
            assert_eq!(ab, form.commutator(b, a).unwrap().scale(&minus), "[{a}, {b}]");
            for l in ab.labels() {
                assert_eq!((l.pi, l.q), (a.pi + b.pi, a.q + b.q));
                assert!(l.sigma <= a.sigma + b.sigma && l.k <= a.k + b.k);
            }
        }
    }
}

#[test]
fn parity_selection_on_the_odd_subalgebra() {
    let form = ClosedForm::default();
    let odd = sigma0_odd_k();
    for &a in &odd {
        for &b in &odd {
            for l in form.commutator(a, b).unwrap().labels() {
                assert_eq!(l.sigma, HalfInt::ZERO);
                assert_eq!(l.k.twice() % 4, 2, "[{a}, {b}] produced {l}");
            }
        }
    }
}

#[test]
fn jacobi_exhaustive_on_the_odd_subalgebra() {
    let form = ClosedForm::default();
    let basis: Vec<TensorPolynomial> = sigma0_odd_k().into_iter().map(TensorPolynomial::single).collect();
    for a in &basis {
        for b in &basis {
            for c in &basis {
                assert!(jacobiator(&form, a, b, c).is_zero());
            }
        }
    }
    let sc = StructureConstants::compute(&basis, &form).unwrap();
    assert!(sc.is_antisymmetric());
    assert!(sc.satisfies_jacobi());
}

#[test]
fn jacobi_on_random_triples() {
    let form = ClosedForm::default();
    let all = labels();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_d7e5);
    for _ in 0..250 {
        let pick: Vec<TensorPolynomial> = all
            .choose_multiple(&mut rng, 3)
            .map(|l| TensorPolynomial::single(*l))
            .collect();
        assert!(jacobiator(&form, &pick[0], &pick[1], &pick[2]).is_zero(), "{pick:?}");
    }
    // Random combinations as well as single components.
    for _ in 0..20 {
        let combo = |rng: &mut ChaCha8Rng| {
            TensorPolynomial::from_terms(
                all.choose_multiple(rng, 3)
                    .zip([1, -2, 3])
                    .map(|(l, c)| (*l, RadicalNumber::from_integer(c))),
            )
        };
        let (a, b, c) = (combo(&mut rng), combo(&mut rng), combo(&mut rng));
        assert!(jacobiator(&form, &a, &b, &c).is_zero());
    }
}

#[test]
fn scalar_component_is_central() {
    let form = ClosedForm::default();
    let n = DoubleTensorLabel::new(0, 0, 0, 0);
    for &x in &labels() {
        assert!(form.commutator(n, x).unwrap().is_zero());
    }
}

#[test]
fn closure_of_candidate_sets() {
    let form = ClosedForm::default();
    let odd: Vec<TensorPolynomial> = sigma0_odd_k().into_iter().map(TensorPolynomial::single).collect();
    assert_eq!(StructureConstants::compute(&odd, &form).unwrap().dim(), 10);
    let mixed = [DoubleTensorLabel::new(0, 2, 0, 1), DoubleTensorLabel::new(0, 3, 0, -1)].map(TensorPolynomial::single);
    assert!(matches!(
        StructureConstants::compute(&mixed, &form),
        Err(Error::NotClosed { .. })
    ));
    assert_eq!(StructureConstants::compute(&[], &form).unwrap().dim(), 0);
}
