use std::time::Instant;

use kirbykit::linkdiagram::{seifert_matrix, twist_knot};

fn main() {
    for n in [1i64, 2, 3, 4, 5, 6, 8] {
        let t0 = Instant::now();
        let d = twist_knot(n).unwrap();
        let v = seifert_matrix(&d, "k").unwrap();
        println!("n={n}: rank={} ({:?})", v.matrix.rows(), t0.elapsed());
    }
}
