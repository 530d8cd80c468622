use std::time::Instant;

use weylot::polytope::unimodular_equivalent;
use weylot::weyl::{is_weyl_polytope, mr_family, TABLE};
use weylot::{Polytope, RationalVector};

#[test]
fn every_row_is_reflexive_and_weyl() {
    for row in TABLE.iter() {
        for n in row.smallest_ranks(3) {
            let t = Instant::now();
            let rec = mr_family(row.id, n).unwrap_or_else(|e| panic!("row {} rank {n}: {e}", row.id));
            let p = &rec.polytope;
            let det = is_weyl_polytope(p).unwrap_or_else(|| panic!("row {} rank {n} not detected", row.id));
            // the detected reflection group can be larger (A2 hexagon is G2)
            assert!(det.group.order >= rec.system.weyl_group_order(), "row {} rank {n}", row.id);
            if row.smooth {
                assert!(p.is_delzant(), "row {} rank {n}", row.id);
            }
            eprintln!("row {} rank {n} ({}): {} vertices, {} facets, {:?}", row.id, det.group.label, p.vertices().len(), p.facets().len(), t.elapsed());
        }
    }
}

/// `conv{±e_i, ±(e_1 + ... + e_n)}`, the dual of the `V_n` moment polytope.
fn v_fan_polytope(n: usize) -> Polytope {
    let mut pts = Vec::new();
    for i in 0..n {
        let mut e = vec![0i64; n];
        e[i] = 1;
        pts.push(RationalVector::from_ints(&e));
        pts.push(RationalVector::from_ints(&e).neg());
    }
    pts.push(RationalVector::from_ints(&vec![1; n]));
    pts.push(RationalVector::from_ints(&vec![-1; n]));
    Polytope::from_points(&pts).unwrap()
}

#[test]
fn v_rows_match_the_fan_description() {
    for (row, n) in [(13, 2), (3, 3), (4, 4), (3, 5), (4, 6)] {
        let rec = mr_family(row, n).unwrap();
        assert!(
            unimodular_equivalent(&rec.polytope.dual(), &v_fan_polytope(n)).is_some(),
            "row {row} rank {n}"
        );
    }
}
