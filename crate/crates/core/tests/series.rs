use loopforge::series::{ca_filtration, compare_series, filtration, naive_filtration};
use loopforge::{catalog, catalog_entries, CayleyLoop, Loop, SeriesKind, SeriesOptions};

fn small_catalog() -> Vec<CayleyLoop> {
    catalog_entries().filter(|e| e.order <= 16).map(|e| e.build()).collect()
}

#[test]
fn products_of_terms_land_in_the_right_term() {
    let depth = 5;
    for l in small_catalog() {
        let f = ca_filtration(&l, depth);
        let members = |p: usize| f.term(p).members().to_vec();
        for p in 1..depth {
            for q in 1..=depth - p {
                for a in members(p) {
                    for b in members(q) {
                        assert!(f.term(p + q).contains(l.commutator(&a, &b)), "{} [L{p}, L{q}]", l.name());
                    }
                }
                for r in 1..=depth.saturating_sub(p + q) {
                    for a in members(p) {
                        for b in members(q) {
                            for c in members(r) {
                                assert!(
                                    f.term(p + q + r).contains(l.associator(&a, &b, &c)),
                                    "{} (L{p}, L{q}, L{r})",
                                    l.name()
                                );
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn filtrations_descend_and_nest() {
    for l in small_catalog() {
        let ca = ca_filtration(&l, 5);
        let naive = naive_filtration(&l, 5);
        assert!(ca.is_descending() && naive.is_descending(), "{}", l.name());
        for i in 1..=5 {
            assert!(naive.term(i).is_subset(ca.term(i)), "{} term {i}", l.name());
            assert!(l.is_normal_subloop(ca.term(i).members()));
        }
    }
}

/// All automorphisms of a small loop, by brute force over permutations
/// fixing the identity.
fn automorphisms(l: &CayleyLoop) -> Vec<Vec<usize>> {
    fn extend(l: &CayleyLoop, f: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let k = f.len();
        if k == l.order() {
            if l.is_automorphism(f) {
                out.push(f.clone());
            }
            return;
        }
        for v in 0..l.order() {
            let forced = (k == l.identity_index()) != (v == l.identity_index());
            if used[v] || forced {
                continue;
            }
            used[v] = true;
            f.push(v);
            extend(l, f, used, out);
            f.pop();
            used[v] = false;
        }
    }
    let mut out = Vec::new();
    extend(l, &mut Vec::new(), &mut vec![false; l.order()], &mut out);
    out
}

#[test]
fn terms_are_characteristic() {
    for name in ["Q8", "D4", "LS5", "S3", "V4"] {
        let l = catalog(name).unwrap();
        let autos = automorphisms(&l);
        assert!(!autos.is_empty());
        for kind in [SeriesKind::Gamma, SeriesKind::Ca, SeriesKind::Naive] {
            let f = filtration(&l, kind, 4, &SeriesOptions::default());
            for t in f.terms() {
                for a in &autos {
                    assert!(t.members().iter().all(|x| t.contains(a[x])), "{name} {kind}");
                }
            }
        }
    }
}

#[test]
fn cml81() {
    let l = catalog("CML81").unwrap();
    let r = compare_series(&l, 3, &SeriesOptions::default());
    // the associators generate a central subgroup of order 3
    assert_eq!(r.ca[1].order, 3);
    assert!(r.flags.gamma2_eq_ca2);
    assert_eq!(r.gamma[2].order, 1);
    assert_eq!(r.ca[2].order, 3);
    assert!(!r.flags.gamma_eq_ca);
    assert!(!r.flags.lower_bound);
}

#[test]
fn sampled_terms_are_contained_in_exact_ones() {
    let l = catalog("M(S3,2)").unwrap();
    let exact = ca_filtration(&l, 4);
    for seed in 0..4 {
        let opts = SeriesOptions { max_evals: 50, seed };
        let f = filtration(&l, SeriesKind::Ca, 4, &opts);
        for i in 1..=4 {
            assert!(f.term(i).is_subset(exact.term(i)));
            if f.term(i) != exact.term(i) {
                assert!(f.is_lower_bound(i));
            }
        }
    }
}
