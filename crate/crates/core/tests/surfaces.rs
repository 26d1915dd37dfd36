mod common;

use proptest::prelude::*;
use toric_radiant::groups::{self, RootSet};
use toric_radiant::surfaces::{self, SurfaceSequence};
use toric_radiant::RootSystem;

#[test]
fn closed_forms_on_comparable_surfaces() {
    let all = surfaces::enumerate_smooth_surfaces(7, 5, 100_000).unwrap();
    let mut comparable = 0;
    for seq in all.iter().filter(|s| surfaces::is_radiant_sequence(s)) {
        let r = surfaces::surface_report(seq).unwrap();
        assert_eq!(r.picard_number, seq.m() - 2);
        if !r.comparable {
            continue;
        }
        comparable += 1;
        let rs = RootSystem::new(&r.bilateral.matrix);
        let d = r.d as usize;
        assert_eq!(rs.positive(0).len(), d + 1, "{seq}");
        assert_eq!(r.nilpotency_class, d + 1, "{seq}");
        let series = groups::series_report(&rs, &RootSet::full(&rs)).unwrap();
        assert_eq!(series.nilpotency_class, r.nilpotency_class, "{seq}");
        assert_eq!(r.subgroups.len(), d + 1, "{seq}");
        let dims: Vec<usize> = r.subgroups.iter().map(RootSet::len).collect();
        assert_eq!(dims, (2..=d + 2).collect::<Vec<_>>(), "{seq}");
    }
    assert!(comparable > 0);
}

#[test]
fn enumeration_ignores_seed_order_and_bounds() {
    let a = surfaces::enumerate_smooth_surfaces(6, 6, 100_000).unwrap();
    let b = surfaces::enumerate_smooth_surfaces(6, 6, 100_000).unwrap();
    assert_eq!(a, b);
    for seq in &a {
        assert_eq!(seq.entries().iter().sum::<i64>(), 3 * seq.m() as i64 - 12);
        assert_eq!(seq.canonical(), *seq);
    }
}

fn surface() -> impl Strategy<Value = SurfaceSequence> {
    (0i64..5, proptest::collection::vec(0usize..8, 0..4)).prop_map(|(q, ups)| {
        let mut s = SurfaceSequence::new(vec![0, q, 0, -q]).unwrap();
        for u in ups {
            s = surfaces::blow_up(&s, u % s.m() + 1).unwrap();
        }
        s
    })
}

proptest! {
    #[test]
    fn blow_down_undoes_blow_up(seq in surface(), at in 0usize..16) {
        let s = at % seq.m() + 1;
        let up = surfaces::blow_up(&seq, s).unwrap();
        prop_assert_eq!(surfaces::blow_down(&up, s + 1).unwrap(), seq);
    }

    #[test]
    fn sequences_close_up(seq in surface()) {
        let rays = surfaces::sequence_to_rays(seq.entries()).unwrap();
        prop_assert_eq!(rays.len(), seq.m());
        prop_assert_eq!(SurfaceSequence::new(seq.entries().to_vec()).unwrap(), seq);
    }

    #[test]
    fn canonical_form_is_invariant(seq in surface(), shift in 0usize..16, flip in any::<bool>()) {
        let mut c = seq.entries().to_vec();
        let k = shift % c.len();
        c.rotate_left(k);
        if flip {
            c.reverse();
        }
        prop_assert_eq!(surfaces::canonical_form(&c), surfaces::canonical_form(seq.entries()));
    }
}
