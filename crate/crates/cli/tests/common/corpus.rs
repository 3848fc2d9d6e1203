//! Random source expressions over the generators of a context.

use rand::rngs::StdRng;
use rand::Rng;

fn leaf(rng: &mut StdRng, n: usize, psi: bool) -> String {
    let a = rng.gen_range(1..=n);
    match rng.gen_range(0..10) {
        0 => rng.gen_range(-3..=5).to_string(),
        1 => "q".into(),
        2 => "zeta".into(),
        3 => format!("{}({a})", if psi { "psi" } else { "phi" }),
        4 => format!("{}({a})", if psi { "psid" } else { "phid" }),
        5 => format!("w({a})"),
        6 => if psi { format!("winv({a})") } else { format!("z({a})") },
        7 => format!("z({a})"),
        8 => format!("f({})", rng.gen_range(0..=n)),
        _ => if psi { format!("eps({})", rng.gen_range(1..=2 * n)) } else { format!("p{a}") },
    }
}

pub fn expr(rng: &mut StdRng, depth: u32, n: usize, psi: bool) -> String {
    if depth == 0 || rng.gen_bool(0.3) {
        return leaf(rng, n, psi);
    }
    let a = expr(rng, depth - 1, n, psi);
    match rng.gen_range(0..6) {
        0 => format!("{a} + {}", expr(rng, depth - 1, n, psi)),
        1 => format!("{a} - ({})", expr(rng, depth - 1, n, psi)),
        2 | 3 => format!("({a})*({})", expr(rng, depth - 1, n, psi)),
        4 => format!("({a})^{}", rng.gen_range(0..=2)),
        _ => format!("-({a})/{}", rng.gen_range(1..=4)),
    }
}
