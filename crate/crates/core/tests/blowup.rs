use logtangent::blowup::*;
use logtangent::exactalg::{int, ratio, PointP2};
use logtangent::p1split::LineP2;
use logtangent::planelog::KeyRestriction;
use proptest::prelude::*;

fn cls(s: &str) -> PicClass {
    s.parse().unwrap()
}

fn table(d: &str, scenario: &str, lo: i64, hi: i64) -> (Vec<ConstraintRow>, CandidateSet) {
    let d = cls(d);
    let rows = restriction_table(&d, scenario.parse().unwrap()).unwrap();
    let c = destabilizer_search(&d, &rows, (lo, hi), false).unwrap();
    (rows, c)
}

fn has_row(rows: &[ConstraintRow], text: &str) -> bool {
    rows.iter().any(|r| r.inequality() == text)
}

/// Plain enumeration of the box, no pruning.
fn brute_force(d: &PicClass, rows: &[ConstraintRow], lo: i64, hi: i64) -> Vec<PicClass> {
    let twice_mu = intersect(&PicClass::canonical().add(d), &PicClass::hyperplane());
    let n = (hi - lo + 1) as usize;
    let mut out = Vec::new();
    for idx in 0..n.pow(7) {
        let mut v = [0i64; 7];
        let mut r = idx;
        for x in v.iter_mut().rev() {
            *x = lo + (r % n) as i64;
            r /= n;
        }
        let c = PicClass::new(v[0], [v[1], v[2], v[3], v[4], v[5], v[6]]);
        if 2 * c.degree() >= twice_mu && rows.iter().all(|r| r.satisfied_by(&c)) {
            out.push(c);
        }
    }
    out
}

#[test]
fn gram_matrix() {
    let basis: Vec<PicClass> =
        std::iter::once(PicClass::line()).chain((1..=6).map(PicClass::exceptional)).collect();
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            let want = if i != j { 0 } else if i == 0 { 1 } else { -1 };
            assert_eq!(intersect(x, y), want);
        }
    }
}

#[test]
fn twenty_seven_lines() {
    let lines = lines27();
    assert_eq!(lines.len(), 27);
    let mut sorted = lines.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), 27);
    for c in &lines {
        assert_eq!(c.self_intersection(), -1);
        assert_eq!(c.degree(), 1);
        assert_eq!(genus(c).unwrap(), 0);
        let meets = lines.iter().filter(|d| intersect(c, d) == 1).count();
        assert_eq!(meets, 10, "{c}");
    }
    let pairs = (0..27).flat_map(|i| (i + 1..27).map(move |j| (i, j)));
    assert_eq!(pairs.filter(|&(i, j)| intersect(&lines[i], &lines[j]) == 1).count(), 135);
}

#[test]
fn genus_and_slope() {
    assert_eq!(genus(&cls("L")).unwrap(), 0);
    assert_eq!(genus(&cls("2L")).unwrap(), 0);
    assert_eq!(genus(&cls("3L")).unwrap(), 1);
    assert_eq!(genus(&PicClass::hyperplane()).unwrap(), 1);
    let h = PicClass::hyperplane();
    assert_eq!(slope_log(&cls("L"), &h), int(0));
    assert_eq!(slope_log(&cls("2L"), &h), ratio(3, 2));
    assert_eq!(slope_log(&PicClass::new(0, [0; 6]), &h), ratio(-3, 2));
}

#[test]
fn cremona_and_conic_sum() {
    let h = PicClass::hyperplane();
    assert_eq!(cremona(&h), h);
    assert_eq!(cremona(&PicClass::line()), cls("2L - E1 - E2 - E3"));
    let sum = cls("2L-E1-E2-E3-E4").add(&cls("2L-E1-E2-E5-E6")).add(&cls("2L-E3-E4-E5-E6"));
    assert_eq!(sum, h.scale(2));
    let mut images: Vec<PicClass> = lines27().iter().map(cremona).collect();
    images.sort();
    let mut lines = lines27();
    lines.sort();
    assert_eq!(images, lines);
}

#[test]
fn text_forms() {
    let c = cls("(-2;1,1,1,1,1,1)");
    assert_eq!(c.to_string(), "-2L + 1 E1 + 1 E2 + 1 E3 + 1 E4 + 1 E5 + 1 E6");
    assert_eq!(cls(&c.to_string()), c);
    assert_eq!(cls(&c.compact()), c);
    let text = "# header\n(1;-1,-1,0,0,0,0) <= 2 # secant\n\n(1;0,0,0,0,0,0) >= -3\n";
    let rows = parse_constraints(text).unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1].relation, Relation::Ge);
    assert!(parse_constraints("(1;0) < 2").is_err());
}

#[test]
fn pushforward_rules() {
    let p = pushforward_blowup(&PicClass::hyperplane(), 6).unwrap();
    assert_eq!(p.twist, 3);
    assert_eq!(p.ideal_powers, (1..=6).map(|i| (i, 1)).collect::<Vec<_>>());
    assert!(p.r1.is_empty());
    assert!(pushforward_blowup(&PicClass::exceptional(1), 6).unwrap().r1.is_empty());
    let p = pushforward_blowup(&cls("3E1"), 6).unwrap();
    assert_eq!(p.r1, vec![(1, 1)]);
    assert_eq!(p.to_string(), "pi_* = O(0); R1 = O/I_p1^1");
    assert!(pushforward_blowup(&cls("L - E3"), 2).is_err());
    assert!(pushforward_blowup(&cls("L"), 7).is_err());
}

#[test]
fn key_lemma_on_surface() {
    let d = cls("2L");
    let c = cls("L - E1");
    let k = |d: &PicClass, c: &PicClass, k| {
        let KeyRestriction { sub, quotient, .. } = key_splitting_on_s(d, c, k).unwrap();
        (sub, quotient)
    };
    assert_eq!(k(&d, &c, 2), (0, 0));
    assert_eq!(k(&d, &c, 1), (1, -1));
    let (s, q) = k(&cls("L - E1"), &PicClass::exceptional(1), 1);
    assert_eq!((-s, -q), (-1, 1));
    assert!(key_splitting_on_s(&d, &c, 0).is_err());
    assert!(key_splitting_on_s(&d, &cls("3L"), 2).is_err());
}

#[test]
fn cotangent_restrictions() {
    for l in lines27() {
        assert_eq!(omega_s_restriction(&l).unwrap(), (-2, 1));
    }
    assert_eq!(omega_s_restriction(&cls("L")).unwrap(), (-2, -1));
    assert_eq!(omega_s_restriction(&cls("L-E4")).unwrap(), (-2, 0));
    for (c, want) in [("2L-E1", -3), ("2L-E1-E2", -2), ("2L-E1-E2-E3", -1), ("2L-E1-E2-E3-E4", 0)] {
        let (lo, hi) = omega_s_restriction(&cls(c)).unwrap();
        assert_eq!((lo.min(hi), lo.max(hi)), (want.min(-2), want.max(-2)), "{c}");
    }
}

#[test]
fn rows_for_a_line() {
    let rows = restriction_table(&cls("L"), Scenario::Generic).unwrap();
    for r in ["-b1 <= 1", "a+b3 <= 0", "a+b2+b5 <= 1", "2a+b1+b2+b3+b4 <= 0", "2a+b3+b4+b5+b6 <= 0"] {
        assert!(has_row(&rows, r), "missing {r}");
    }
    assert!(rows.iter().all(|r| r.curve != PicClass::line()));
}

#[test]
fn rows_for_a_conic() {
    let rows = restriction_table(&cls("2L"), Scenario::TangentLines).unwrap();
    assert_eq!(rows.len(), 1 + 6 + 6 + 15);
    for r in ["a <= 0", "-b6 <= 1", "a+b1 <= 0", "a+b4+b6 <= 2"] {
        assert!(has_row(&rows, r), "missing {r}");
    }
    let quad = restriction_table(&cls("2L"), "quad-tangent:6".parse().unwrap()).unwrap();
    assert!(has_row(&quad, "2a+b1+b2+b3+b4+b5 <= 4"));
    let a = restriction_table(&cls("2L"), Scenario::CaseA).unwrap();
    assert!(has_row(&a, "2a+b1+b2+b3+b4+b5 <= 2"));
}

#[test]
fn line_divisor_candidates() {
    let (_, c) = table("L", "generic", -8, 8);
    assert_eq!(c.classes, vec![cls("(-2;1,1,1,1,1,1)"), cls("(0;0,0,0,0,0,0)")]);
}

/// The reference table with `(-3; 3,3,2,1,1,1)` removed (it breaks `a+b1+b2 <= 2`) and
/// `(-2; 2,2,2,2,0,0)` added.
#[test]
fn quad_tangent_value_table() {
    let (_, c) = table("2L", "quad-tangent:6", -8, 8);
    let expected: Vec<(i64, Vec<i64>)> = vec![
        (-1, vec![1, 1, 1, 1, 1, 1]),
        (-1, vec![1, 1, 1, 1, 1, 0]),
        (-2, vec![2, 2, 2, 2, 0, 0]),
        (-2, vec![2, 2, 2, 1, 1, 1]),
        (-2, vec![2, 2, 2, 1, 1, 0]),
        (-2, vec![2, 2, 1, 1, 1, 1]),
        (-3, vec![3, 2, 2, 2, 1, 1]),
        (-3, vec![2, 2, 2, 2, 2, 2]),
        (-3, vec![2, 2, 2, 2, 2, 1]),
        (-4, vec![4, 2, 2, 2, 2, 2]),
        (-4, vec![3, 3, 2, 2, 2, 2]),
    ];
    assert_eq!(c.value_table(), expected);
    let extra = cls("(-2;2,2,2,2,0,0)");
    assert_eq!(extra.degree(), 2);
    assert!(c.classes.contains(&extra));
}

#[test]
fn other_conic_scenarios() {
    assert!(table("2L", "generic", -8, 8).1.classes.is_empty());
    assert!(table("2L", "case-a", -8, 8).1.classes.is_empty());
    let b = table("2L", "case-b:6", -8, 8).1.value_table();
    assert_eq!(b, vec![(-1, vec![1; 6]), (-1, vec![1, 1, 1, 1, 1, 0]), (-2, vec![2, 2, 1, 1, 1, 1])]);
}

#[test]
fn search_matches_brute_force() {
    for (d, sc) in [("2L", "quad-tangent:6"), ("L", "generic"), ("2L", "case-b:3")] {
        let (rows, c) = table(d, sc, -4, 4);
        assert_eq!(c.classes, brute_force(&cls(d), &rows, -4, 4), "{d} {sc}");
    }
}

#[test]
fn contradictory_rows_and_empty_box() {
    let d = cls("L");
    let rows = parse_constraints("(1;0,0,0,0,0,0) <= -1\n(1;0,0,0,0,0,0) >= 0").unwrap();
    assert!(destabilizer_search(&d, &rows, (-8, 8), false).unwrap().classes.is_empty());
    assert!(destabilizer_search(&d, &rows, (1, 0), false).is_err());
}

#[test]
fn strict_slope() {
    let d = cls("L");
    let rows = restriction_table(&d, Scenario::Generic).unwrap();
    let c = destabilizer_search(&d, &rows, (-8, 8), true).unwrap();
    assert!(c.classes.is_empty());
}

fn z6() -> Vec<PointP2> {
    ["[1:0:0]", "[0:1:0]", "[0:0:1]", "[1:1:1]", "[1:2:3]", "[2:-1:5]"]
        .iter()
        .map(|s| PointP2::parse(s).unwrap())
        .collect()
}

#[test]
fn general_position_witnesses() {
    let z = z6();
    assert_eq!(general_position(&z).unwrap(), Position::General);
    let mut dup = z.clone();
    dup[4] = dup[0];
    assert_eq!(general_position(&dup).unwrap(), Position::Coincident(1, 5));
    let mut col = z.clone();
    col[5] = PointP2::parse("[1:1:0]").unwrap();
    assert_eq!(general_position(&col).unwrap(), Position::Collinear(1, 2, 6));
    let conic: Vec<PointP2> = ["[1:0:0]", "[0:1:0]", "[0:0:1]", "[2:2:-1]", "[3:-2:6]", "[-2:3:6]"]
        .iter()
        .map(|s| PointP2::parse(s).unwrap())
        .collect();
    assert_eq!(general_position(&conic).unwrap(), Position::OnConic);
    assert!(general_position(&z[..5]).is_err());
}

#[test]
fn pencil_members() {
    let z = z6();
    let member = |s: &str| classify_pencil_member(&LineP2::parse(s).unwrap(), &z).unwrap();
    assert_eq!(member("[1:1:-3]"), PencilMember::TwistedCubic);
    assert_eq!(member("[0:2:-1]"), PencilMember::ConicPlusLine(1));
    assert_eq!(member("[0:0:1]"), PencilMember::ThreeLines(1, 2));
    let three = PencilMember::ThreeLines(1, 2).components();
    let total = three.iter().fold(PicClass::new(0, [0; 6]), |a, c| a.add(c));
    assert_eq!(total, PicClass::line());
    assert!(three.iter().all(|c| c.self_intersection() == -1));
}

fn arb_class() -> impl Strategy<Value = PicClass> {
    (-6i64..=6, prop::array::uniform6(-6i64..=6)).prop_map(|(a, b)| PicClass::new(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pairing_is_symmetric(x in arb_class(), y in arb_class()) {
        prop_assert_eq!(intersect(&x, &y), intersect(&y, &x));
    }

    #[test]
    fn cremona_is_an_isometric_involution(x in arb_class(), y in arb_class()) {
        prop_assert_eq!(intersect(&cremona(&x), &cremona(&y)), intersect(&x, &y));
        prop_assert_eq!(cremona(&cremona(&x)), x);
        prop_assert_eq!(cremona(&x).degree(), x.degree());
    }

    #[test]
    fn class_text_round_trips(x in arb_class()) {
        prop_assert_eq!(x.to_string().parse::<PicClass>().unwrap(), x);
        prop_assert_eq!(x.compact().parse::<PicClass>().unwrap(), x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn adding_a_row_never_enlarges(c in arb_class(), bound in -4i64..=4, drop in 0usize..34) {
        let d = cls("2L");
        let mut rows = restriction_table(&d, "quad-tangent:2".parse().unwrap()).unwrap();
        rows.remove(drop.min(rows.len() - 1));
        let before = destabilizer_search(&d, &rows, (-4, 4), false).unwrap();
        rows.push(ConstraintRow { curve: c, relation: Relation::Le, bound, provenance: String::new() });
        let after = destabilizer_search(&d, &rows, (-4, 4), false).unwrap();
        prop_assert!(after.classes.iter().all(|x| before.classes.contains(x)));
    }
}
