use gclink_core::fibration::{all_fibrations, fibration_certificate, sampled_winding};
use gclink_core::geom4::{
    circle_distance, gauss_linking_integral, linking_number, move_to_standard, principal_angles, GreatCircle, Isometry, Vec4,
};
use gclink_core::greatlink::{construct_dpq, linking_matrix, GreatCircleLink};
use proptest::prelude::*;

fn gram_schmidt(vs: [[f64; 4]; 4]) -> Option<[Vec4; 4]> {
    let mut out: Vec<Vec4> = Vec::new();
    for v in vs {
        let mut x = Vec4(v);
        for e in &out {
            x = x - *e * x.dot(*e);
        }
        if x.norm() < 1e-3 {
            return None;
        }
        out.push(x.normalized());
    }
    Some([out[0], out[1], out[2], out[3]])
}

fn frame() -> impl Strategy<Value = [Vec4; 4]> {
    prop::array::uniform4(prop::array::uniform4(-1.0f64..1.0)).prop_filter_map("degenerate", gram_schmidt)
}

fn circle_pair() -> impl Strategy<Value = (GreatCircle, GreatCircle)> {
    (frame(), frame())
        .prop_map(|(a, b)| (GreatCircle::new(a[0], a[1]).unwrap(), GreatCircle::new(b[0], b[1]).unwrap()))
        .prop_filter("nearly intersecting", |(c, d)| principal_angles(c, d).0 > 1e-3)
}

fn rotation(f: [Vec4; 4]) -> Isometry {
    let mut m = [[0.0; 4]; 4];
    for (row, v) in m.iter_mut().zip(f) {
        *row = v.0;
    }
    if gclink_core::geom4::det4(f) < 0.0 {
        m[3] = (-f[3]).0;
    }
    Isometry::from_matrix(m, 1e-9).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn linking_is_symmetric_unit((c, d) in circle_pair()) {
        let l = linking_number(&c, &d).unwrap();
        prop_assert_eq!(l.abs(), 1);
        prop_assert_eq!(l, linking_number(&d, &c).unwrap());
        prop_assert_eq!(-l, linking_number(&c.reversed(), &d).unwrap());
    }

    #[test]
    fn move_to_standard_lands_on_z_axis(f in frame()) {
        let c = GreatCircle::new(f[0], f[1]).unwrap();
        let r = move_to_standard(&c);
        prop_assert!(r.orthogonality_residual() < 1e-10);
        prop_assert!((r.determinant() - 1.0).abs() < 1e-10);
        for x in [r.apply_vec(c.u()), r.apply_vec(c.v())] {
            let (w3, w4) = x.w();
            prop_assert!(w3.abs() < 1e-10 && w4.abs() < 1e-10);
        }
    }

    #[test]
    fn clearance_is_squared_sine_of_distance((c, d) in circle_pair()) {
        let link = GreatCircleLink::new(vec![c, d]).unwrap();
        for base in 0..2 {
            let cert = fibration_certificate(&link, base).unwrap();
            let rec = cert.records[0];
            let s = circle_distance(&c, &d).sin();
            prop_assert!((rec.clearance - s * s).abs() < 1e-9);
            prop_assert_eq!(rec.winding_sign, linking_number(&c, &d).unwrap());
        }
    }

    #[test]
    fn certificates_survive_rotation(f in frame()) {
        let link = construct_dpq(2, 5).unwrap();
        let moved = link.transformed(&rotation(f));
        let before = all_fibrations(&link).unwrap();
        let after = all_fibrations(&moved).unwrap();
        for (a, b) in before.iter().zip(&after) {
            for (x, y) in a.records.iter().zip(&b.records) {
                prop_assert_eq!(x.winding_sign, y.winding_sign);
                prop_assert!((x.clearance - y.clearance).abs() < 1e-9);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn gauss_integral_agrees((c, d) in circle_pair()) {
        let g = gauss_linking_integral(&c, &d, 4096).unwrap();
        prop_assert!((g - f64::from(linking_number(&c, &d).unwrap())).abs() < 1e-3, "gauss {}", g);
    }
}

#[test]
fn winding_signs_match_linking_for_all_small_links() {
    for q in 2..=50i64 {
        for p in (1..q).filter(|p| num_integer::gcd(*p, q) == 1) {
            let link = construct_dpq(p, q).unwrap();
            let lk = linking_matrix(&link).unwrap();
            for cert in all_fibrations(&link).unwrap() {
                assert_eq!(cert.fiber_punctures as i64, q - 1);
                for rec in &cert.records {
                    assert_eq!(rec.winding_sign, lk[cert.base_index][rec.component], "{p}/{q}");
                }
            }
        }
    }
}

#[test]
fn sampled_winding_is_monotone_on_d38() {
    let link = construct_dpq(3, 8).unwrap();
    let comps = link.components();
    for (i, c) in comps.iter().enumerate() {
        for (j, d) in comps.iter().enumerate() {
            if i != j {
                let s = sampled_winding(c, d, 1000);
                assert!(s.strictly_monotone);
                let lk = f64::from(linking_number(c, d).unwrap());
                assert!((s.total - lk * std::f64::consts::TAU).abs() < 1e-6);
            }
        }
    }
}
