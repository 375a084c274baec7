use dist_core::RngStream;
use polymer_models::{crossings, x_mid, LatticePath, Move};

fn random_path(m: usize, n: usize, rng: &mut RngStream) -> LatticePath {
    // uniform over paths: shuffle a multiset of moves
    let mut moves: Vec<Move> = std::iter::repeat_n(Move::Right, m)
        .chain(std::iter::repeat_n(Move::Up, n))
        .collect();
    for i in (1..moves.len()).rev() {
        let j = (rng.uniform() * (i + 1) as f64) as usize;
        moves.swap(i, j.min(i));
    }
    LatticePath { moves }
}

#[test]
fn crossing_identities_hold_on_random_paths() {
    let mut rng = RngStream::new(21, 0);
    for _ in 0..100_000 {
        let n = 1 + (rng.uniform() * 12.0) as usize;
        let m = n + (rng.uniform() * 6.0) as usize;
        let p = random_path(m, n, &mut rng);
        let (n, m) = (n as i64, m as i64);
        let xm = x_mid(&p, n).unwrap();
        let l = (rng.uniform() * (n + 1) as f64) as i64;
        let k = (rng.uniform() * (n + 1) as f64) as i64;
        let c = crossings(&p, n, l, k).unwrap();
        assert!(c.v0 <= c.v1 && c.w0 <= c.w1 && c.v1 <= m);
        let target = n - l;
        assert!((xm - target).abs() <= (c.v1 - target).max(target - c.v0), "{}", p.to_string());
        if l >= 1 && c.v1 >= n - l {
            assert!(xm >= n - l, "{}", p.to_string());
        }
        if k >= 1 && c.w1 >= n - k {
            assert!(xm <= k, "{}", p.to_string());
        }
    }
}

#[test]
fn path_text_round_trip() {
    let p = LatticePath::from_str("RRUURU").unwrap();
    assert_eq!(p.to_string(), "RRUURU");
    assert_eq!(p.end(), (3, 3));
    assert!(LatticePath::from_str("RX").is_err());
    assert!(crossings(&p, 3, 4, 0).is_err());
}
