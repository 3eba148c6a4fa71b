//! Property tests for the Zhukovsky map and source functions.

use num_complex::Complex64;
use proptest::prelude::*;
use qsc::analytic::{self, shell_pair, Coupling, Sheet, SourceF, SourceKind, ZhukPoint};

fn off_cut(h: f64) -> impl Strategy<Value = Complex64> {
    (-3.0f64..3.0, -2.0f64..2.0).prop_filter("off the cut", move |(re, im)| im.abs() > 1e-3 || re.abs() > h + 1e-3).prop_map(|(re, im)| Complex64::new(re, im))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn zhukovsky_sheets(h in 0.2f64..2.0, u in off_cut(2.0)) {
        let c = Coupling::new(h).unwrap();
        let outer = analytic::x_of_u(u, Sheet::Outer, c).unwrap();
        let inner = analytic::x_of_u(u, Sheet::Inner, c).unwrap();
        prop_assert!(outer.norm() >= 1.0 - 1e-12);
        prop_assert!((outer * inner - 1.0).norm() < 1e-10);
        prop_assert!((c.u_of_x(outer) - u).norm() < 1e-10 * (1.0 + u.norm()));
    }

    #[test]
    fn source_functions_are_unimodular_across_sheets(h in 0.3f64..1.5, u in off_cut(1.5), u0 in -2.0f64..2.0, theta in -1.0f64..1.0) {
        let c = Coupling::new(h).unwrap();
        let (yp, ym) = shell_pair(Complex64::new(u0, 0.3), c).unwrap();
        prop_assert!(analytic::check_shell(yp, ym, c, 1e-9).is_ok());
        let kinds = [
            SourceKind::Ext { yp: vec![yp], ym: vec![ym] },
            SourceKind::PolInfinity { m: 3 },
            SourceKind::Exp { theta: Complex64::new(theta, 0.2) },
            SourceKind::Pol { theta: vec![Complex64::new(0.3, theta)], sign: 1.0 },
        ];
        let p = ZhukPoint::new(u, Sheet::Outer);
        for kind in kinds {
            let f = SourceF::new(c, kind).unwrap();
            let prod = f.eval(&p).unwrap() * f.eval(&p.swapped()).unwrap();
            prop_assert!((prod - 1.0).norm() < 1e-9, "{:?}", prod);
        }
    }
}

#[test]
fn shell_violation_is_rejected() {
    let c = Coupling::new(0.8).unwrap();
    let (yp, ym) = shell_pair(Complex64::new(0.4, 0.0), c).unwrap();
    assert!(analytic::check_shell(yp * 1.01, ym, c, 1e-9).is_err());
}
