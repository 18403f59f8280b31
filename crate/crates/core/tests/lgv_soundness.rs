//! The lattice-path determinants agree with brute-force enumeration.

use coredhex::exactnum::{int, rat};
use coredhex::lgv::build_cored_matrix;
use coredhex::tilings::{cell_cap, count_signed, count_tilings, CoredHexagon};
use coredhex::ExactValue;

#[test]
fn cored_determinant_counts_tilings() {
    for a in 0..=3u32 {
        for b in 0..=3u32 {
            for c in (b % 2..=3).step_by(2) {
                for m in 0..=2u32 {
                    let h = CoredHexagon::new(a, b, c, m);
                    let eps = if (a + b) % 2 == 0 { int(0) } else { rat(1, 2) };
                    let det = build_cored_matrix(a, b, c, m, &eps).unwrap().det().unwrap();
                    let oracle = if m % 2 == 0 {
                        count_tilings(&h, cell_cap()).unwrap()
                    } else {
                        count_signed(&h, cell_cap()).unwrap()
                    };
                    assert_eq!(det, ExactValue::Integer(oracle), "({a},{b},{c},{m})");
                }
            }
        }
    }
}
