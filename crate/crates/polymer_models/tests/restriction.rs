use dist_core::RngStream;
use polymer_models::stationarity_restriction_check;

#[test]
fn same_box_gives_same_law() {
    let mut rng = RngStream::new(51, 0);
    let r = stationarity_restriction_check((2, 2), (2, 2), 20_000, 1.0, 1.5, &mut rng).unwrap();
    assert!(r.tv < 0.03, "{}", r.tv);
}

#[test]
fn corner_piece_of_larger_box() {
    let mut rng = RngStream::new(52, 0);
    let r = stationarity_restriction_check((3, 3), (2, 2), 20_000, 1.0, 1.5, &mut rng).unwrap();
    assert!(r.tv < 0.03, "{}", r.tv);
    let r = stationarity_restriction_check((4, 3), (1, 2), 20_000, 0.7, 1.1, &mut rng).unwrap();
    assert!(r.tv < 0.03, "{}", r.tv);
    assert!(stationarity_restriction_check((2, 2), (3, 1), 10, 1.0, 1.0, &mut rng).is_err());
}
