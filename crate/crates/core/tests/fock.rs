use dtensor::fock::{FockSpace, OrbitalOrdering, SparseOperator};
use dtensor::radix::RadicalNumber;
use dtensor::wigner::HalfInt;

fn space() -> FockSpace {
    FockSpace::d_shell()
}

#[test]
fn canonical_anticommutation_relations() {
    let s = space();
    let id = SparseOperator::identity(s.dim());
    let zero = SparseOperator::zero(s.dim());
    let orbs = s.orbitals().to_vec();
    assert_eq!(orbs.len(), 10);
    let create: Vec<SparseOperator> = orbs.iter().map(|o| s.create(*o)).collect();
    let annihilate: Vec<SparseOperator> = orbs.iter().map(|o| s.annihilate(*o)).collect();
    for i in 0..10 {
        for j in 0..10 {
            assert_eq!(annihilate[i].anticommutator(&annihilate[j]).unwrap(), zero);
            assert_eq!(create[i].anticommutator(&create[j]).unwrap(), zero);
            let mixed = annihilate[i].anticommutator(&create[j]).unwrap();
            assert_eq!(
                mixed,
                if i == j { id.clone() } else { zero.clone() },
                "{{a_{i}, a+_{j}}}"
            );
        }
        assert!(annihilate[i].compose(&annihilate[i]).unwrap().is_zero());
    }
}

#[test]
fn creation_raises_particle_number_by_one() {
    let s = space();
    for orb in s.orbitals() {
        for (row, col, _) in s.create(*orb).entries() {
            assert_eq!(row.count_ones(), col.count_ones() + 1);
            assert_eq!(row & !col, 1 << orb.index);
        }
    }
}

#[test]
fn one_body_products_are_sparse_signed_units() {
    let s = space();
    let one = RadicalNumber::one();
    let minus = -RadicalNumber::one();
    for i in 0..10 {
        for j in 0..10 {
            let p = s.hopping(i, j);
            let expected = if i == j { 512 } else { 256 };
            assert_eq!(p.nnz(), expected, "a+_{i} a_{j}");
            assert!(p.entries().all(|(_, _, v)| *v == one || *v == minus));
        }
    }
}

#[test]
fn number_operators_commute() {
    let s = space();
    let n: Vec<SparseOperator> = (0..10).map(|i| s.hopping(i, i)).collect();
    for a in &n {
        for b in &n {
            assert!(a.commutator(b).unwrap().is_zero());
        }
    }
    let total = n
        .iter()
        .fold(SparseOperator::zero(s.dim()), |acc, x| acc.add(x).unwrap());
    assert_eq!(total, s.number_operator());
    assert_eq!(s.number_operator().get(0b1011, 0b1011), RadicalNumber::from_integer(3));
}

#[test]
fn sectors_and_orderings() {
    let s = space();
    assert_eq!(s.sector(2).len(), 45);
    assert_eq!(s.sector(0), vec![0]);
    let r = FockSpace::new(HalfInt::int(2), OrbitalOrdering::Reversed).unwrap();
    let up2 = s.orbital(HalfInt::HALF, HalfInt::int(2)).unwrap();
    let up2r = r.orbital(HalfInt::HALF, HalfInt::int(2)).unwrap();
    assert_eq!((up2.index, up2r.index), (0, 9));
    // Reordering changes Jordan-Wigner signs but not the algebra.
    let a = r.annihilate(up2r);
    assert_eq!(
        a.anticommutator(&r.create(up2r)).unwrap(),
        SparseOperator::identity(r.dim())
    );
}

#[test]
fn two_particle_restriction_commutes_with_commutator() {
    let s = space();
    let pairs = s.sector(2);
    let x = s.hopping(0, 3).add(&s.hopping(7, 2)).unwrap();
    let y = s.hopping(3, 5).sub(&s.hopping(2, 0)).unwrap();
    let full = x.commutator(&y).unwrap().restrict(&pairs);
    let restricted = x.restrict(&pairs).commutator(&y.restrict(&pairs)).unwrap();
    assert_eq!(full, restricted);
    assert!(!full.is_zero());
}
