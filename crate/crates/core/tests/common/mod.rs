//! Shared Wigner oracles. Quantum numbers are passed as twice their value.

use std::collections::BTreeMap;

use dtensor::radix::{RadicalNumber, Rational};
use dtensor::wigner::{cg, six_j, triangle, HalfInt};

pub fn h2(twice: i32) -> HalfInt {
    HalfInt::from_twice(twice)
}

/// Coupled state as coefficients over product states `(2·m1, 2·m2)`.
pub type State = BTreeMap<(i32, i32), RadicalNumber>;

fn inner(a: &State, b: &State) -> RadicalNumber {
    a.iter().filter_map(|(k, v)| b.get(k).map(|w| v * w)).sum()
}

fn axpy(y: &mut State, c: &RadicalNumber, x: &State) {
    for (k, v) in x {
        let slot = y.entry(*k).or_default();
        *slot += &(c * v);
    }
    y.retain(|_, v| !v.is_zero());
}

fn normalize(v: &State) -> State {
    let n2 = inner(v, v).as_rational().expect("squared norm is rational");
    let inv = RadicalNumber::sqrt_rational(&n2).unwrap().recip().unwrap();
    v.iter().map(|(k, c)| (*k, c * &inv)).collect()
}

/// `√((j+m)(j−m+1))` with twice-values.
fn ladder(j2: i32, m2: i32) -> RadicalNumber {
    RadicalNumber::sqrt_rational(&Rational::new(((j2 + m2) * (j2 - m2 + 2)) as i64, 4)).unwrap()
}

/// `J− = j1− + j2−` on a product-state expansion.
fn lower(v: &State, j1: i32, j2: i32) -> State {
    let mut out = State::new();
    for (&(m1, m2), c) in v {
        if m1 > -j1 {
            axpy(
                &mut out,
                &(c * &ladder(j1, m1)),
                &State::from([((m1 - 2, m2), RadicalNumber::one())]),
            );
        }
        if m2 > -j2 {
            axpy(
                &mut out,
                &(c * &ladder(j2, m2)),
                &State::from([((m1, m2 - 2), RadicalNumber::one())]),
            );
        }
    }
    out
}

/// Every `|J M⟩` for `j1 ⊗ j2` built by lowering from the top state of each
/// `J` and Gram-Schmidt, with the `m1 = j1` component of `|J J⟩` positive.
pub fn ladder_oracle(j1: i32, j2: i32) -> BTreeMap<(i32, i32), State> {
    let mut states: BTreeMap<(i32, i32), State> = BTreeMap::new();
    let mut big_j = j1 + j2;
    while big_j >= (j1 - j2).abs() {
        // Seed with the largest admissible m1; its overlap with |J J⟩ is nonzero.
        let m1 = (-j1..=j1).rev().step_by(2).find(|m1| (big_j - m1).abs() <= j2).unwrap();
        let mut top = State::from([((m1, big_j - m1), RadicalNumber::one())]);
        for ((jj, mm), s) in &states {
            if *mm == big_j && *jj > big_j {
                let c = -inner(s, &top);
                axpy(&mut top, &c, s);
            }
        }
        let mut top = normalize(&top);
        let lead = top
            .iter()
            .max_by_key(|((m1, _), _)| *m1)
            .map(|(_, c)| c.signum())
            .unwrap();
        if lead < 0 {
            top = top.into_iter().map(|(k, c)| (k, -c)).collect();
        }
        let mut m = big_j;
        let mut current = top;
        loop {
            states.insert((big_j, m), current.clone());
            if m == -big_j {
                break;
            }
            let down = lower(&current, j1, j2);
            let inv = ladder(big_j, m).recip().unwrap();
            current = down.into_iter().map(|(k, c)| (k, &c * &inv)).collect();
            m -= 2;
        }
        big_j -= 2;
    }
    states
}

pub fn projections(j: i32) -> impl Iterator<Item = i32> {
    (-j..=j).step_by(2)
}

pub fn couplings(j1: i32, j2: i32) -> impl Iterator<Item = i32> {
    ((j1 - j2).abs()..=j1 + j2).step_by(2)
}

fn expect(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

/// Every CG coefficient with `j1, j2 ≤ max` against the ladder oracle;
/// returns the number of coefficients compared.
pub fn check_cg_ladder(max: i32) -> Result<usize, String> {
    let mut n = 0;
    for j1 in 0..=max {
        for j2 in 0..=max {
            for ((big_j, big_m), state) in &ladder_oracle(j1, j2) {
                for m1 in projections(j1) {
                    for m2 in projections(j2) {
                        let expected = state.get(&(m1, m2)).cloned().unwrap_or_default();
                        let got =
                            cg(h2(j1), h2(m1), h2(j2), h2(m2), h2(*big_j), h2(*big_m)).map_err(|e| e.to_string())?;
                        expect(got == expected, || {
                            format!("<{j1} {m1} {j2} {m2}|{big_j} {big_m}>: {got} vs {expected}")
                        })?;
                        n += 1;
                    }
                }
            }
        }
    }
    Ok(n)
}

/// Orthogonality and completeness for `j1, j2 ≤ max`; returns the number
/// of sums checked.
pub fn check_cg_unitarity(max: i32) -> Result<usize, String> {
    let mut n = 0;
    for j1 in 0..=max {
        for j2 in 0..=max {
            let table: BTreeMap<(i32, i32, i32, i32), RadicalNumber> = couplings(j1, j2)
                .flat_map(|big_j| projections(big_j).map(move |big_m| (big_j, big_m)))
                .flat_map(|(big_j, big_m)| {
                    projections(j1).filter_map(move |m1| {
                        let m2 = big_m - m1;
                        (m2.abs() <= j2).then(|| {
                            let v = cg(h2(j1), h2(m1), h2(j2), h2(m2), h2(big_j), h2(big_m)).unwrap();
                            ((big_j, big_m, m1, m2), v)
                        })
                    })
                })
                .collect();
            let entry = |big_j, big_m, m1, m2| table.get(&(big_j, big_m, m1, m2)).cloned().unwrap_or_default();
            let delta = |same: bool| {
                if same {
                    RadicalNumber::one()
                } else {
                    RadicalNumber::zero()
                }
            };
            for big_m in projections(j1 + j2) {
                for ja in couplings(j1, j2).filter(|j| *j >= big_m.abs()) {
                    for jb in couplings(j1, j2).filter(|j| *j >= big_m.abs()) {
                        let s: RadicalNumber = projections(j1)
                            .map(|m1| &entry(ja, big_m, m1, big_m - m1) * &entry(jb, big_m, m1, big_m - m1))
                            .sum();
                        expect(s == delta(ja == jb), || {
                            format!("orthogonality j1={j1} j2={j2} J={ja},{jb} M={big_m}")
                        })?;
                        n += 1;
                    }
                }
            }
            for m1 in projections(j1) {
                for m2 in projections(j2) {
                    for m1b in projections(j1) {
                        let m2b = m1 + m2 - m1b;
                        if m2b.abs() > j2 {
                            continue;
                        }
                        let s: RadicalNumber = couplings(j1, j2)
                            .map(|big_j| &entry(big_j, m1 + m2, m1, m2) * &entry(big_j, m1 + m2, m1b, m2b))
                            .sum();
                        expect(s == delta(m1 == m1b), || {
                            format!("completeness j1={j1} j2={j2} m1={m1},{m1b}")
                        })?;
                        n += 1;
                    }
                }
            }
        }
    }
    Ok(n)
}

/// Column permutations and the two-column upper/lower swap of every 6-j
/// symbol with arguments `≤ max`; returns the number of nonzero symbols.
pub fn check_six_j_symmetry(max: i32) -> Result<usize, String> {
    const PERMS: [[usize; 3]; 5] = [[0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let six =
        |v: [i32; 6]| six_j(h2(v[0]), h2(v[1]), h2(v[2]), h2(v[3]), h2(v[4]), h2(v[5])).map_err(|e| e.to_string());
    let mut nonzero = 0;
    for a in 0..=max {
        for b in 0..=max {
            for c in 0..=max {
                if !triangle(h2(a), h2(b), h2(c)) {
                    continue;
                }
                for d in 0..=max {
                    for e in 0..=max {
                        for f in 0..=max {
                            let (top, bottom) = ([a, b, c], [d, e, f]);
                            let v = six([a, b, c, d, e, f])?;
                            for p in PERMS {
                                let w = six([
                                    top[p[0]],
                                    top[p[1]],
                                    top[p[2]],
                                    bottom[p[0]],
                                    bottom[p[1]],
                                    bottom[p[2]],
                                ])?;
                                expect(v == w, || format!("{{{a} {b} {c}; {d} {e} {f}}} under {p:?}"))?;
                            }
                            expect(v == six([d, e, c, a, b, f])?, || {
                                format!("{{{a} {b} {c}; {d} {e} {f}}} swap")
                            })?;
                            nonzero += !v.is_zero() as usize;
                        }
                    }
                }
            }
        }
    }
    Ok(nonzero)
}
