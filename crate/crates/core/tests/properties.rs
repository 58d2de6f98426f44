use std::sync::OnceLock;

use proptest::prelude::*;

use commlat::commutator::{largest_commutator, CommutatorTable};
use commlat::corpus::{canonical_form, CorpusSpec};
use commlat::io::{lattice_to_json, parse_lattice};
use commlat::lattice::FiniteLattice;
use commlat::projectivity::{PrimeInterval, Projectivity};

fn lattices() -> &'static [FiniteLattice] {
    static CORPUS: OnceLock<Vec<FiniteLattice>> = OnceLock::new();
    CORPUS.get_or_init(|| CorpusSpec::new(7, false, true).unwrap().generate())
}

fn modular() -> &'static [FiniteLattice] {
    static CORPUS: OnceLock<Vec<FiniteLattice>> = OnceLock::new();
    CORPUS.get_or_init(|| CorpusSpec::new(8, true, true).unwrap().generate())
}

/// A corpus lattice together with a few elements of it.
fn lattice_and_elements(
    pool: fn() -> &'static [FiniteLattice],
) -> impl Strategy<Value = (FiniteLattice, usize, usize, usize)> {
    (0..pool().len()).prop_flat_map(move |i| {
        let l = pool()[i].clone();
        let n = l.n();
        (Just(l), 0..n, 0..n, 0..n)
    })
}

proptest! {
    #[test]
    fn lattice_laws((l, x, y, z) in lattice_and_elements(lattices)) {
        prop_assert_eq!(l.meet(x, y), l.meet(y, x));
        prop_assert_eq!(l.join(x, l.meet(x, y)), x);
        prop_assert_eq!(l.meet(x, l.join(x, y)), x);
        prop_assert_eq!(l.meet(l.meet(x, y), z), l.meet(x, l.meet(y, z)));
        prop_assert_eq!(l.join(l.join(x, y), z), l.join(x, l.join(y, z)));
        prop_assert_eq!(l.leq(x, y), l.meet(x, y) == x);
        prop_assert!(l.leq(l.bottom(), x) && l.leq(x, l.top()));
    }

    #[test]
    fn dual_reverses_order((l, x, y, _z) in lattice_and_elements(lattices)) {
        let d = l.dual();
        prop_assert_eq!(d.leq(x, y), l.leq(y, x));
        prop_assert_eq!(d.meet(x, y), l.join(x, y));
        prop_assert_eq!(&d.dual(), &l);
        prop_assert_eq!(d.is_modular(), l.is_modular());
    }

    #[test]
    fn file_round_trip((l, _x, _y, _z) in lattice_and_elements(lattices)) {
        let text = lattice_to_json(&l);
        prop_assert_eq!(&parse_lattice(&text).unwrap(), &l);
        prop_assert_eq!(lattice_to_json(&parse_lattice(&text).unwrap()), text);
        prop_assert_eq!(&canonical_form(&l), &l);
    }

    #[test]
    fn generated_congruence_is_a_congruence((l, x, y, z) in lattice_and_elements(lattices)) {
        let theta = l.congruence_generated([(x, y), (y, z)]);
        prop_assert!(theta.is_congruence(&l));
        prop_assert!(theta.related(x, z));
        let (q, h) = l.quotient(&theta).unwrap();
        prop_assert_eq!(h.target(), &q);
        prop_assert!(h.is_surjective());
    }

    #[test]
    fn largest_table_axioms((l, x, y, z) in lattice_and_elements(lattices)) {
        let c = largest_commutator(&l);
        prop_assert!(c.validate().is_valid());
        prop_assert_eq!(c.get(x, y), c.get(y, x));
        prop_assert!(l.leq(c.get(x, y), l.meet(x, y)));
        prop_assert_eq!(c.get(l.join(x, z), y), l.join(c.get(x, y), c.get(z, y)));
        prop_assert!(CommutatorTable::zero(&l).pointwise_leq(&c));
    }

    // Well-known facts about projectivity in modular lattices.
    #[test]
    fn meet_irreducible_separation((l, a, b, _z) in lattice_and_elements(modular)) {
        let proj = Projectivity::new(&l).unwrap();
        let ms = proj.meet_irreducibles();
        if !l.leq(b, a) {
            // Some meet irreducible lies above a but not above b.
            prop_assert!(ms.iter().any(|m| l.leq(a, m.elem()) && !l.leq(b, m.elem())));
        }
        if l.covered_by(a, b) {
            let i = PrimeInterval::new(&l, a, b).unwrap();
            for m in ms {
                if l.leq(a, m.elem()) && !l.leq(b, m.elem()) {
                    // [a, b] transposes up onto [η, η⁺].
                    prop_assert_eq!(l.join(b, m.elem()), m.succ());
                    prop_assert_eq!(l.meet(b, m.elem()), a);
                    prop_assert!(proj.projective(i, m.interval()));
                }
            }
        }
    }

    #[test]
    fn join_irreducible_transposes_up((l, _a, g, _z) in lattice_and_elements(modular)) {
        let proj = Projectivity::new(&l).unwrap();
        for r in proj.join_irreducibles() {
            if l.leq(r.elem(), g) {
                continue;
            }
            let found = proj.meet_irreducibles().iter().any(|m| {
                l.leq(g, m.elem())
                    && l.join(r.elem(), m.elem()) == m.succ()
                    && l.meet(r.elem(), m.elem()) == r.pred()
            });
            prop_assert!(found);
        }
    }
}
