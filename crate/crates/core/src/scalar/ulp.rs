/// Position of a finite float on a line where adjacent representables are
/// one apart; both zeros map to 0.
fn ordinal(f: f64) -> i64 {
    let bits = f.to_bits() as i64;
    if bits < 0 {
        -(bits & i64::MAX)
    } else {
        bits
    }
}

/// Number of representable steps from `a` to `b`. Pairs straddling zero are
/// measured through zero. `None` when either input is NaN or infinite.
pub fn ulp_distance(a: f64, b: f64) -> Option<u64> {
    if !a.is_finite() || !b.is_finite() {
        return None;
    }
    Some(ordinal(a).abs_diff(ordinal(b)))
}

/// Next representable float from `from` in the direction of `to`.
pub fn next_after(from: f64, to: f64) -> f64 {
    if from.is_nan() || to.is_nan() {
        return f64::NAN;
    }
    if from == to {
        return to;
    }
    if from == 0.0 {
        let tiny = f64::from_bits(1);
        return if to > 0.0 { tiny } else { -tiny };
    }
    let bits = from.to_bits();
    let away_from_zero = (to > from) == (from > 0.0);
    f64::from_bits(if away_from_zero { bits + 1 } else { bits - 1 })
}
