mod common;

use common::tgamma;
use sgg::ggd::{cumulant_partition_terms, ggd_cumulant, ggd_moment, CumulantTable, GGDParams, MAX_CUMULANT_ORDER};
use std::collections::BTreeMap;

/// Integer polynomial in the even moments m₂, m₄, …; a key lists the exponent
/// of m_{2j} at position j − 1.
type Poly = BTreeMap<Vec<u32>, i128>;

const VARS: usize = (MAX_CUMULANT_ORDER / 2) as usize;

fn moment(k: u32) -> Poly {
    let mut p = Poly::new();
    if k % 2 == 0 {
        let mut e = vec![0; VARS];
        e[(k / 2 - 1) as usize] = 1;
        p.insert(e, 1);
    }
    p
}

fn add_scaled(acc: &mut Poly, p: &Poly, c: i128) {
    for (e, v) in p {
        *acc.entry(e.clone()).or_insert(0) += c * v;
    }
    acc.retain(|_, v| *v != 0);
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, va) in a {
        for (eb, vb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert(0) += va * vb;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

fn binomial(n: u32, k: u32) -> i128 {
    (0..k).fold(1i128, |acc, i| acc * i128::from(n - i) / i128::from(i + 1))
}

/// κ_n = m_n − Σ_{k=1}^{n−1} C(n−1, k−1) κ_k m_{n−k}, zero mean.
fn recursion_cumulants(max: u32) -> Vec<Poly> {
    let mut kappa: Vec<Poly> = vec![Poly::new(), Poly::new()];
    for n in 2..=max {
        let mut k_n = moment(n);
        for k in 1..n {
            let term = mul(&kappa[k as usize], &moment(n - k));
            add_scaled(&mut k_n, &term, -binomial(n - 1, k - 1));
        }
        kappa.push(k_n);
    }
    kappa
}

fn partition_poly(order: u32) -> Poly {
    let mut p = Poly::new();
    for t in cumulant_partition_terms(order).unwrap() {
        let mut e = t.multiplicity.clone();
        e.resize(VARS, 0);
        *p.entry(e).or_insert(0) += t.coefficient;
    }
    p.retain(|_, v| *v != 0);
    p
}

#[test]
fn partition_sum_equals_recursion_exactly() {
    let kappa = recursion_cumulants(MAX_CUMULANT_ORDER);
    for order in (2..=MAX_CUMULANT_ORDER).step_by(2) {
        assert_eq!(partition_poly(order), kappa[order as usize], "order {order}");
    }
    for order in (3..=MAX_CUMULANT_ORDER).step_by(2) {
        assert!(kappa[order as usize].is_empty(), "odd order {order}");
    }
}

#[test]
fn partition_counts() {
    // number of integer partitions of n = order/2
    let counts = [1, 2, 3, 5, 7, 11, 15, 22];
    for (i, &c) in counts.iter().enumerate() {
        assert_eq!(cumulant_partition_terms(2 * (i as u32 + 1)).unwrap().len(), c);
    }
    assert!(cumulant_partition_terms(18).is_err());
    assert!(cumulant_partition_terms(5).is_err());
}

fn eval(p: &Poly, moments: &[f64]) -> f64 {
    p.iter()
        .map(|(e, &c)| c as f64 * e.iter().zip(moments).map(|(&k, &m)| m.powi(k as i32)).product::<f64>())
        .sum()
}

#[test]
fn numeric_cumulants_match_recursion() {
    let kappa = recursion_cumulants(8);
    for alpha in [0.5, 1.0, 2.0, 3.0] {
        let p = GGDParams::new(0.0, 0.9, alpha).unwrap();
        let moments: Vec<f64> = (1..=VARS as u32).map(|j| ggd_moment(&p, 2 * j).unwrap()).collect();
        for order in 2..=8u32 {
            let want = eval(&kappa[order as usize], &moments);
            let got = ggd_cumulant(&p, order).unwrap();
            let scale = moments[(order / 2).max(1) as usize - 1].abs().max(1.0);
            assert!((got - want).abs() <= 1e-12 * scale, "alpha={alpha} order={order}: {got} vs {want}");
        }
    }
}

#[test]
fn low_order_closed_forms() {
    for alpha in [0.5, 1.0, 2.0, 3.0] {
        let s: f64 = 1.3;
        let p = GGDParams::new(0.0, s, alpha).unwrap();
        let g = |k: f64| tgamma(k / alpha);
        let r4 = g(1.0) * g(5.0) / g(3.0).powi(2);
        let r6 = g(1.0).powi(2) * g(7.0) / g(3.0).powi(3);
        let forms = [(2, s * s), (4, s.powi(4) * (r4 - 3.0)), (6, s.powi(6) * (r6 - 15.0 * r4 + 30.0))];
        for (order, want) in forms {
            let got = ggd_cumulant(&p, order).unwrap();
            assert!((got - want).abs() <= 1e-12 * want.abs().max(1.0), "alpha={alpha} k{order}: {got} vs {want}");
        }
    }
}

#[test]
fn table_lookup() {
    let p = GGDParams::new(0.0, 1.0, 1.0).unwrap();
    let t = CumulantTable::new(&p, 8).unwrap();
    assert_eq!(t.get(2), Some(1.0));
    assert_eq!(t.get(3), Some(0.0));
    assert_eq!(t.get(10), None);
    assert_eq!(t.get(6), Some(ggd_cumulant(&p, 6).unwrap()));
}
