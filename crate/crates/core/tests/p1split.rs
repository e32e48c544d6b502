use logtangent::exactalg::{int, Rational};
use logtangent::p1split::*;
use proptest::prelude::*;

fn bf(c: &[i64]) -> BinaryForm {
    BinaryForm::from_ints(c)
}

fn arb_binary(degree: usize) -> impl Strategy<Value = BinaryForm> {
    prop::collection::vec(-4i64..=4, degree + 1).prop_map(|c| BinaryForm::from_ints(&c))
}

/// One column `O(−a) → ⊕O(−b_i)` with random entries of degree `a − b_i`.
fn arb_column() -> impl Strategy<Value = GradedMatrixP1> {
    (0i64..=2, prop::collection::vec(0i64..=3, 2..=3)).prop_flat_map(|(base, gaps)| {
        let a = base + 3;
        let target: Vec<i64> = gaps.iter().map(|g| a - g).collect();
        let entries: Vec<_> = gaps.iter().map(|&g| arb_binary(g as usize)).collect();
        entries.prop_map(move |col| {
            let rows = col.into_iter().map(|e| vec![e]).collect();
            GradedMatrixP1::new(rows, vec![a], target.clone()).unwrap()
        })
    })
}

#[test]
fn known_cokernels() {
    // (s, t): O(−1) → O⊕O has cokernel O(1).
    let m = GradedMatrixP1::new(vec![vec![bf(&[1, 0])], vec![bf(&[0, 1])]], vec![1], vec![0, 0]).unwrap();
    assert_eq!(coker_profile(&m, None).unwrap(), SplittingType::new(vec![1], 0));
    // (s², 0): cokernel O(0) ⊕ a length-two point.
    let m = GradedMatrixP1::new(vec![vec![bf(&[1, 0, 0])], vec![BinaryForm::zero(1)]], vec![2], vec![0, 1]).unwrap();
    assert_eq!(coker_profile(&m, None).unwrap(), SplittingType::new(vec![-1], 2));
    // (s³, t³) and (s³, s²t) share a factor s² in the second case.
    let row = |g: &[i64]| GradedMatrixP1::new(vec![vec![bf(&[1, 0, 0, 0]), bf(g)]], vec![3, 3], vec![0]).unwrap();
    assert_eq!(kernel_splitting(&row(&[0, 0, 0, 1])), SplittingType::new(vec![-6], 0));
    assert_eq!(kernel_splitting(&row(&[0, 1, 0, 0])), SplittingType::new(vec![-4], 0));
}

#[test]
fn narrow_window_is_rejected() {
    let m = GradedMatrixP1::new(vec![vec![bf(&[1, 0])], vec![bf(&[0, 1])]], vec![1], vec![0, 0]).unwrap();
    assert!(coker_profile(&m, Some((0, 1))).is_err());
    assert_eq!(coker_profile(&m, Some((-4, 4))).unwrap(), SplittingType::new(vec![1], 0));
}

#[test]
fn splitting_text() {
    let s = SplittingType::parse("(-1,1;torsion=2)").unwrap();
    assert_eq!(s, SplittingType::new(vec![1, -1], 2));
    assert_eq!(s.degree(), 2);
    assert_eq!(s.h1(-1), 1);
    assert!(SplittingType::parse("(1,2)").is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn profile_is_window_independent(m in arb_column()) {
        prop_assume!(m.generic_rank() == 1);
        let s = coker_profile(&m, None).unwrap();
        prop_assert_eq!(coker_profile(&m, Some((-12, 12))).unwrap(), s.clone());
        prop_assert_eq!(s.rank(), m.rows() - 1);
        prop_assert_eq!(s.degree(), m.coker_degree());
        for t in -12..=12 {
            prop_assert_eq!(s.h0(t), coker_h0(&m, t), "t = {}", t);
        }
    }

    #[test]
    fn binary_product_evaluates(a in arb_binary(2), b in arb_binary(3), s in -5i64..5, t in -5i64..5) {
        let (s, t): (Rational, Rational) = (int(s), int(t));
        prop_assert_eq!(a.mul(&b).eval(&s, &t), a.eval(&s, &t) * b.eval(&s, &t));
        prop_assert_eq!(a.mul(&b).degree(), 5);
    }

    #[test]
    fn dual_twist_and_cohomology(d in prop::collection::vec(-5i64..5, 1..4), k in -3i64..3, t in -6i64..6) {
        let s = SplittingType::new(d, 0);
        prop_assert_eq!(s.twist(k).degree(), s.degree() + k * s.rank() as i64);
        prop_assert_eq!(s.dual().dual(), s.clone());
        // Serre duality on P¹: h¹(E(t)) = h⁰(E*(−2−t)).
        prop_assert_eq!(s.h1(t), s.dual().h0(-2 - t));
        // Riemann–Roch: h⁰ − h¹ = deg + rank·(t+1).
        prop_assert_eq!(s.h0(t) - s.h1(t), s.degree() + s.rank() as i64 * (t + 1));
    }
}
