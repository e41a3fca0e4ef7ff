use twisted_newton_core::arith::{int, rat};
use twisted_newton_core::dwork::{leading_det_product, np_from_minors};
use twisted_newton_core::hasse::{hasse_u, twist_field};
use twisted_newton_core::lfunction::{verify_main4, PolyOverFq, DEFAULT_GUARD};
use twisted_newton_core::polygon::{arithmetic_polygon, hodge_polygon};
use twisted_newton_core::{Error, TwistData};

fn td(p: u64, a: u32, d: u64, u: u64) -> TwistData {
    TwistData::new(p, a, d, u).unwrap()
}

#[test]
fn slopes_of_small_twists() {
    let t = td(13, 1, 3, 0);
    assert_eq!((0..3).map(|n| t.omega(n)).collect::<Vec<_>>(), [int(0), int(4), int(8)]);
    let scaled = hodge_polygon(&t, 3).scale(&int(12)).unwrap();
    assert_eq!(scaled.eval(&int(3)), Some(int(12)));
    assert_eq!(arithmetic_polygon(&t, 3).unwrap().eval(&int(3)), Some(int(12)));
    assert_eq!(arithmetic_polygon(&td(7, 1, 2, 0), 2).unwrap().eval(&int(2)), Some(int(3)));
    let t = td(11, 1, 2, 3);
    assert_eq!([t.omega(0), t.omega(1)], [int(2), int(6)]);
}

#[test]
fn hodge_slopes_carry_the_twist() {
    let t = td(11, 1, 2, 3);
    let h = hodge_polygon(&t, 2);
    assert_eq!(h.slopes(), [rat(3, 20), rat(3, 20) + rat(1, 2)]);
}

#[test]
fn hasse_of_the_running_example() {
    assert_eq!(hasse_u(&td(11, 1, 2, 3)).unwrap().to_string(), "y_1*y_2");
    assert_eq!(hasse_u(&td(7, 1, 1, 2)).unwrap().to_string(), "1");
}

#[test]
fn generic_and_special_f() {
    let t = td(11, 1, 2, 3);
    let field = twist_field(&t).unwrap();
    let generic = verify_main4(&t, &PolyOverFq::from_codes(&field, &[0, 1, 1]).unwrap(), DEFAULT_GUARD, false).unwrap();
    assert!(generic.equality && generic.generic && generic.passed());
    assert_eq!(generic.np.slopes(), [int(2), int(6)]);
    let special = verify_main4(&t, &PolyOverFq::from_codes(&field, &[0, 0, 1]).unwrap(), DEFAULT_GUARD, false).unwrap();
    assert!(!special.equality && !special.generic && special.passed());
}

#[test]
fn small_prime_needs_opt_in() {
    let t = td(5, 1, 2, 0);
    let field = twist_field(&t).unwrap();
    let f = PolyOverFq::from_codes(&field, &[0, 1, 1]).unwrap();
    assert!(matches!(verify_main4(&t, &f, DEFAULT_GUARD, false), Err(Error::SmallPrime { .. })));
    assert!(verify_main4(&t, &f, DEFAULT_GUARD, true).unwrap().passed());
}

#[test]
fn dwork_route_for_the_running_example() {
    let t = td(11, 1, 2, 3);
    let field = twist_field(&t).unwrap();
    let coeffs: Vec<_> = [0, 1, 1].iter().map(|&c| field.from_code(c).unwrap()).collect();
    let ld = leading_det_product(&t, &field, &coeffs, 1, 4).unwrap();
    assert!(ld.holds());
    assert_eq!(ld.expected_order, 2);
    let r = np_from_minors(&t, &coeffs, 2, DEFAULT_GUARD).unwrap();
    assert!(r.bounds_hold() && r.stable);
    assert_eq!(r.matches_c_series, Some(true));
    assert_eq!(r.formal.slopes(), [int(2), int(6)]);
    assert_eq!(r.specialized, r.formal);
}

#[test]
fn minors_need_the_prime_field() {
    let t = td(5, 2, 2, 7);
    let field = twist_field(&t).unwrap();
    let coeffs: Vec<_> = [0, 1, 1].iter().map(|&c| field.from_code(c).unwrap()).collect();
    assert!(matches!(np_from_minors(&t, &coeffs, 1, 2), Err(Error::RequiresPrimeField { a: 2 })));
}
