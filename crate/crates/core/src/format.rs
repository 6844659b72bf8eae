//! Number formatting shared by every exported file.

/// Formats with 17 significant digits, dot decimal separator, scientific form.
///
/// Round-trips every finite `f64` exactly and does not depend on locale.
pub fn sig17(v: f64) -> String {
    format!("{v:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for v in [0.0, -0.0, 1.0, 2.0 / 3.0, -1e-300, 6.02214076e23, f64::MIN_POSITIVE] {
            let s = sig17(v);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), v.to_bits(), "{s}");
        }
        assert_eq!(sig17(0.5), "5.0000000000000000e-1");
    }
}
