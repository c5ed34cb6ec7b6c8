use dtensor::comalg::{ClosedForm, TensorPolynomial};
use dtensor::lieclass::diagram::RootDiagram;
use dtensor::lieclass::{self, build_jf_basis, check_relations, CartanName, FBasisPreset, NamedBasis, Preset};
use dtensor::linalg::Matrix;
use dtensor::radix::RadicalNumber;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn r(s: &str) -> RadicalNumber {
    s.parse().unwrap()
}

fn preset(p: Preset) -> NamedBasis {
    lieclass::preset(p, &ClosedForm::default()).unwrap()
}

#[test]
fn odd_subalgebra_is_b2() {
    let form = ClosedForm::default();
    let basis = preset(Preset::Sigma0OddK);
    assert!(lieclass::check_closure(&basis.elements, &form).unwrap().is_closed());
    let c = lieclass::classify(&basis.elements, &form).unwrap();
    assert_eq!(c.cartan_type.name, CartanName::B2);
    assert_eq!(c.cartan_type.cartan_matrix, vec![vec![2, -1], vec![-2, 2]]);
    assert_eq!((c.dim(), c.rank(), c.roots.len()), (10, 2, 8));
    assert_eq!(c.dim(), c.rank() + c.roots.len());
    assert!(c.killing_nondegenerate);
    assert!(c.geometry.weyl_closed());
    let lens = c.geometry.squared_lengths();
    assert_eq!(lens, vec![r("1/6"), r("1/3")]);
    assert!(lens[1].checked_div(&lens[0]).unwrap() == RadicalNumber::from_integer(2));
    // Σ_α α(H)² over the weights ±(3,2,1,1)·√5/10 on either Cartan axis.
    let kc = c.killing_cartan();
    assert_eq!(
        (kc[(0, 0)].clone(), kc[(0, 1)].clone(), kc[(1, 1)].clone()),
        (r("3/2"), r("0"), r("3/2"))
    );
    assert_eq!(
        c.cartan,
        vec![
            "W[0,1,0,0]".parse().unwrap(),
            "W[0,3,0,0]".parse::<TensorPolynomial>().unwrap()
        ]
    );
}

#[test]
fn root_vectors_satisfy_their_eigen_equations() {
    let form = ClosedForm::default();
    let basis = preset(Preset::Sigma0OddK);
    let c = lieclass::classify(&basis.elements, &form).unwrap();
    for root in &c.roots {
        assert!(root.weight.iter().any(|w| !w.is_zero()));
        for (h, w) in c.cartan.iter().zip(&root.weight) {
            assert_eq!(form.commutator_poly(h, &root.vector).unwrap(), root.vector.scale(w));
        }
        let negated: Vec<RadicalNumber> = root.weight.iter().map(|w| -w).collect();
        let partner = c.roots.iter().find(|x| x.weight == negated).expect("-α is a root");
        let mut conj: Vec<_> = root.vector.labels().map(|l| l.conjugate()).collect();
        let mut theirs: Vec<_> = partner.vector.labels().collect();
        conj.sort();
        theirs.sort();
        assert_eq!(conj, theirs);
    }
}

#[test]
fn ladder_triple_is_a1() {
    let c = lieclass::classify(&preset(Preset::JTriple).elements, &ClosedForm::default()).unwrap();
    assert_eq!(c.cartan_type.name, CartanName::A1);
    assert_eq!(c.cartan_type.cartan_matrix, vec![vec![2]]);
    let weights: Vec<_> = c.roots.iter().map(|x| x.weight[0].clone()).collect();
    assert_eq!(weights, vec![r("1/10*sqrt(5)"), r("-1/10*sqrt(5)")]);
    assert_eq!(c.geometry.squared_lengths(), vec![r("1/2")]);
}

#[test]
fn commuting_pair_is_toral() {
    let basis = preset(Preset::ToralPair);
    let c = lieclass::classify(&basis.elements, &ClosedForm::default()).unwrap();
    assert_eq!(c.cartan_type.name, CartanName::Toral);
    assert_eq!(c.rank(), 2);
    assert!(c.roots.is_empty());
    assert!(!c.killing_nondegenerate);
}

#[test]
fn classification_survives_random_mixing() {
    let form = ClosedForm::default();
    let basis = preset(Preset::Sigma0OddK).elements;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..3 {
        let m = loop {
            let mut m = Matrix::identity(10);
            for i in 0..10 {
                for j in 0..10 {
                    if rng.gen_bool(0.3) {
                        m[(i, j)] += &RadicalNumber::from_integer(rng.gen_range(-2..=2));
                    }
                }
            }
            if !m.determinant().is_zero() {
                break m;
            }
        };
        let mixed: Vec<TensorPolynomial> = (0..10)
            .map(|i| (0..10).fold(TensorPolynomial::zero(), |acc, j| acc.add_scaled(&m[(i, j)], &basis[j])))
            .collect();
        let c = lieclass::classify(&mixed, &form).unwrap();
        assert_eq!(c.cartan_type.name, CartanName::B2);
        assert_eq!(c.roots.len(), 8);
        assert_eq!(c.geometry.squared_lengths(), vec![r("1/6"), r("1/3")]);
    }
}

#[test]
fn jf_presets_and_relations() {
    let form = ClosedForm::default();
    let eigen = build_jf_basis(FBasisPreset::Eigen, &form).unwrap();
    let printed = build_jf_basis(FBasisPreset::Printed, &form).unwrap();
    for (name, q) in [("F2", 2), ("F-2", -2), ("F3", 3), ("F-3", -3)] {
        let expected = format!("2*sqrt(5) * W[0,3,0,{q}]");
        assert_eq!(eigen.get(name).unwrap().to_string(), expected);
    }
    // The printed mixtures are not ad-eigenvectors of J0.
    let j0 = printed.get("J0").unwrap();
    let f2 = printed.get("F2").unwrap();
    assert!(f2.ratio_to(&form.commutator_poly(j0, f2).unwrap()).is_none());
    for basis in [&eigen, &printed] {
        let c = lieclass::classify(&basis.elements, &form).unwrap();
        assert_eq!(c.cartan_type.name, CartanName::B2);
    }
    let checks = check_relations(&eigen, &form).unwrap();
    let computed: Vec<(&str, bool)> = checks.iter().map(|c| (c.computed.as_str(), c.holds)).collect();
    assert_eq!(
        computed,
        vec![
            ("-J1", false),
            ("J-1", true),
            ("J0", true),
            ("J0 + F0", false),
            ("-2 * J0 - F0", false),
            ("3 * J0 - F0", false),
        ]
    );
}

#[test]
fn diagram_has_exact_b2_plane() {
    let basis = preset(Preset::JfEigen);
    let c = lieclass::classify(&basis.elements, &ClosedForm::default()).unwrap();
    let d = RootDiagram::new(&c, &basis);
    let mut plane: Vec<(String, String)> = d
        .roots
        .iter()
        .map(|e| {
            let [x, y] = e.plane.clone().expect("exact frame for B2");
            (x.to_string(), y.to_string())
        })
        .collect();
    plane.sort();
    let mut expected: Vec<(String, String)> = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1)]
        .iter()
        .map(|(x, y)| (x.to_string(), y.to_string()))
        .collect();
    expected.sort();
    assert_eq!(plane, expected);
    assert_eq!(d.cartan, vec!["J0", "F0"]);
    assert!(d.to_svg().matches("<line").count() >= 8);
}
