use super::*;

fn idx(t: &FiniteTva, n: &str) -> usize {
    t.index_of(n).unwrap()
}

fn set(t: &FiniteTva, xs: &[&str]) -> Subset {
    xs.iter().fold(0, |acc, x| acc | singleton(idx(t, x)))
}

/// Evaluates condition `k` at a witness straight from its statement.
/// `true` means the instance is violated.
fn violated(t: &FiniteTva, k: u8, w: &Witness) -> bool {
    let p = |x: usize| t.positive & (1 << x) != 0;
    let i = |x: usize, y: usize| t.imp[x][y];
    let (a, b, c) = (w.a.unwrap_or(0), w.b.unwrap_or(0), w.c.unwrap_or(0));
    let map_set = |s: u64, f: &dyn Fn(usize) -> usize| members(s).map(|e| 1u64 << f(e)).fold(0, |x, y| x | y);
    match k {
        1 => p(i(a, b)) && p(a) && !p(b),
        2 => !p(i(a, i(b, a))),
        3 => !p(i(i(a, i(b, c)), i(i(a, b), i(a, c)))),
        4 => !p(t.top),
        5 => !p(i(t.bot, a)),
        6 => !p(i(a, i(b, t.and[a][b]))),
        7 => !p(i(t.and[a][b], a)),
        8 => !p(i(t.and[a][b], b)),
        9 => !p(i(a, t.or[a][b])),
        10 => !p(i(b, t.or[a][b])),
        11 => !p(i(t.or[a][b], i(i(a, c), i(i(b, c), c)))),
        12 => match (w.forall_set, w.exists_set) {
            (Some(s), _) => !t.forall.contains_key(&map_set(s, &|e| i(a, e))),
            (_, Some(s)) => !t.forall.contains_key(&map_set(s, &|e| i(e, a))),
            _ => panic!("condition 12 witness without a set"),
        },
        13 => {
            let s = w.forall_set.unwrap();
            s & !t.positive == 0 && !p(t.forall[&s])
        }
        14 => {
            let s = w.forall_set.unwrap();
            !p(i(t.forall[&map_set(s, &|e| i(a, e))], i(a, t.forall[&s])))
        }
        15 => !p(i(t.forall[&w.forall_set.unwrap()], a)),
        16 => !p(i(a, t.exists[&w.exists_set.unwrap()])),
        17 => {
            let s = w.exists_set.unwrap();
            !p(i(t.exists[&s], i(t.forall[&map_set(s, &|e| i(e, a))], a)))
        }
        _ => unreachable!(),
    }
}

fn assert_replays(t: &FiniteTva, r: &TvaReport) {
    for c in &r.conditions {
        if let Some(w) = &c.witness {
            assert!(violated(t, c.index, w), "witness for {} does not replay", c.index);
        }
    }
}

#[test]
fn bool2_is_a_full_ordered_complete_tva() {
    let t = bool2();
    let r = validate_tva(&t);
    assert_eq!(r.conditions.len(), 17);
    assert!(r.all_hold(), "{:?}", r);
    assert!(r.full);
    assert!(r.order.as_ref().unwrap().iter().all(|v| v.holds));
    assert!(r.complete.as_ref().unwrap().holds);
}

#[test]
fn bool2_file_matches_heyting_construction() {
    let h = heyting_to_tva(&FiniteHeyting::chain(2)).unwrap();
    assert_eq!(h, bool2());
    let c3 = FiniteTva::from_json(CHAIN3_SRC).unwrap();
    let mut h3 = FiniteHeyting::chain(3);
    h3.names = vec!["0".into(), "m".into(), "1".into()];
    assert_eq!(heyting_to_tva(&h3).unwrap(), c3);
}

#[test]
fn empty_positive_set_breaks_condition_4() {
    let mut t = bool2();
    t.positive = 0;
    let r = validate_tva(&t);
    assert!(r.failing().contains(&4));
    assert_replays(&t, &r);
}

#[test]
fn broken_modus_ponens() {
    // 1 => 0 positive and 1 positive, but 0 is not.
    let mut t = bool2();
    t.imp[1][0] = 1;
    let r = validate_tva(&t);
    assert_eq!(r.failing(), vec![1]);
    let w = r.conditions[0].witness.unwrap();
    assert_eq!((w.a, w.b), (Some(1), Some(0)));
    assert_replays(&t, &r);
}

#[test]
fn implication_tables_of_small_chains() {
    let b = heyting_to_tva(&FiniteHeyting::chain(2)).unwrap();
    for a in 0..2 {
        for c in 0..2 {
            assert_eq!(b.imp[a][c], if (a, c) == (1, 0) { 0 } else { 1 });
        }
    }
    // Residuation on the chain 0 < m < 1, by brute force.
    let h = FiniteHeyting::chain(3);
    let t = heyting_to_tva(&h).unwrap();
    let (z, m, one) = (0, 1, 2);
    assert_eq!(t.imp[one][m], m);
    assert_eq!(t.imp[m][z], z);
    for x in 0..3 {
        assert_eq!(t.imp[z][x], one);
    }
    for a in 0..3 {
        for b in 0..3 {
            let best = (0..3).filter(|&c| c.min(a) <= b).max().unwrap();
            assert_eq!(t.imp[a][b], best);
        }
    }
}

#[test]
fn standard_family_passes_everything() {
    for (name, h) in standard_family() {
        let t = heyting_to_tva(&h).unwrap();
        assert_eq!(t.positive, singleton(h.top), "{name}");
        let r = validate_tva(&t);
        assert!(r.all_hold(), "{name}: {:?}", r);
        assert!(r.full);
    }
}

#[test]
fn product_names_and_size() {
    let sq = FiniteHeyting::chain(2).product(&FiniteHeyting::chain(2));
    assert_eq!(sq.size(), 4);
    assert_eq!(sq.names[3], "(1,1)");
    assert_eq!(sq.top, 3);
    assert_eq!(sq.bot, 0);
    let f = FiniteHeyting::from_json(include_str!("../../corpus/lattice_square.json")).unwrap();
    assert_eq!(f.size(), 4);
    assert_eq!(f.arrow[idx_h(&f, "a")][idx_h(&f, "b")], idx_h(&f, "b"));
}

fn idx_h(h: &FiniteHeyting, n: &str) -> usize {
    h.names.iter().position(|x| x == n).unwrap()
}

#[test]
fn non_distributive_lattices_are_rejected() {
    // M3: three incomparable atoms.
    let names = ["0", "a", "b", "c", "1"].map(String::from).to_vec();
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)];
    assert!(matches!(FiniteHeyting::from_order(names, &pairs), Err(HeytingError::NoArrow(..))));
    // Two atoms without a meet.
    let names = ["a", "b", "c", "d"].map(String::from).to_vec();
    let pairs = [(0, 2), (0, 3), (1, 2), (1, 3)];
    assert!(matches!(FiniteHeyting::from_order(names, &pairs), Err(HeytingError::NoMeet(..) | HeytingError::NoJoin(..))));
}

#[test]
fn corrupted_heyting_tables_are_rejected() {
    let mut h = FiniteHeyting::chain(3);
    h.arrow[2][1] = 2;
    assert!(matches!(heyting_to_tva(&h), Err(HeytingError::Law(_))));
}

#[test]
fn order_checks() {
    let mut t = bool2();
    t.order = Some(vec![vec![true, false], vec![true, true]]);
    let v = validate_order(&t);
    let failed: Vec<_> = v.iter().filter(|v| !v.holds).map(|v| v.name).collect();
    assert!(failed.contains(&"top-maximal"));
    // 1 <= 0 declared as well: antisymmetry and upward closure.
    t.order = Some(closure(2, &[(0, 1), (1, 0)]));
    let failed: Vec<_> = validate_order(&t).into_iter().filter(|v| !v.holds).map(|v| v.name).collect();
    assert!(failed.contains(&"antisymmetric"));
    assert!(failed.contains(&"positive-upward-closed"));
}

#[test]
fn completeness() {
    // Two incomparable atoms below two incomparable tops: {c, d} has no glb.
    let names: Vec<String> = ["a", "b", "c", "d"].map(String::from).to_vec();
    let mut t = bool2();
    t.names = names.clone();
    let leq = closure(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]);
    t.order = Some(leq.clone());
    let v = validate_complete(&t);
    assert!(!v.holds);
    assert_eq!(glb(&leq, 0b1100), None);
    let w: Vec<String> = serde_json::from_value(v.witness.unwrap()).unwrap();
    let s = w.iter().fold(0u64, |acc, n| acc | singleton(names.iter().position(|m| m == n).unwrap()));
    assert_eq!(glb(&leq, s), None);
    // The empty set's glb is the top.
    let b = bool2();
    assert_eq!(glb(b.order.as_ref().unwrap(), 0), Some(1));
    assert!(validate_complete(&b).holds);
}

#[test]
fn non_full_domains() {
    let mut t = bool2();
    t.forall.retain(|&s, _| s == singleton(1));
    t.exists.clear();
    let r = validate_tva(&t);
    assert!(!r.full);
    // 0 => {1} and 1 => {1} are both {1}.
    assert!(r.conditions[11].holds());
    t.forall = [(set(&t, &["0"]), 0)].into_iter().collect();
    let r = validate_tva(&t);
    // 0 => {0} = {1} leaves the domain.
    assert!(!r.conditions[11].holds());
    assert_replays(&t, &r);
}

#[test]
fn json_round_trip() {
    for src in [BOOL2_SRC, CHAIN3_SRC] {
        let t = FiniteTva::from_json(src).unwrap();
        let back = FiniteTva::from_json_value(t.to_json()).unwrap();
        assert_eq!(t, back);
    }
    assert!(matches!(FiniteTva::from_json(r#"{"elements": ["0"]}"#), Err(TvaError::Json(_))));
    let bad = BOOL2_SRC.replace(r#""top": "1""#, r#""top": "2""#);
    assert_eq!(FiniteTva::from_json(&bad), Err(TvaError::UnknownElement("2".into())));
}

#[test]
fn mutations_detect_every_condition() {
    let t = bool2();
    let mut detected = [false; 17];
    let mut isolated = [false; 17];
    for m in single_entry_mutations(&t) {
        let u = m.apply(&t);
        let r = validate_tva(&u);
        assert_replays(&u, &r);
        let failing = r.failing();
        for &k in &failing {
            detected[k as usize - 1] = true;
        }
        if let [k] = failing[..] {
            isolated[k as usize - 1] = true;
        }
    }
    assert!(detected.iter().all(|&d| d));
    // In the two-element algebra every entry that breaks 2, 3, 14 or 15 also
    // breaks another condition.
    let alone: Vec<usize> = (1..=17).filter(|k| isolated[k - 1]).collect();
    assert_eq!(alone, vec![1, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 16, 17]);
}
