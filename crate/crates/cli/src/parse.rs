//! Value parsers for the command-line flags.

use catdecay::{Complex64, GridSpec};

/// `RE` or `RE,IM`.
pub fn parse_alpha(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').collect();
    let num = |t: &str| parse_finite(t).map_err(|e| format!("bad amplitude '{s}': {e}"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("bad amplitude '{s}': expected RE or RE,IM")),
    }
}

fn parse_finite(t: &str) -> Result<f64, String> {
    let v: f64 = t.trim().parse().map_err(|_| format!("'{t}' is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("'{t}' is not finite"))
    }
}

/// `start:stop:steps` (inclusive, `steps` counts points), a comma list, or a
/// single number. `x:x:1` is accepted as a one-point sweep.
pub fn parse_sweep(s: &str) -> Result<Vec<f64>, String> {
    if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, stop, steps] = parts.as_slice() else {
            return Err(format!("bad sweep '{s}': expected START:STOP:STEPS"));
        };
        let start = parse_finite(start)?;
        let stop = parse_finite(stop)?;
        let steps: usize = steps
            .trim()
            .parse()
            .map_err(|_| format!("bad sweep '{s}': STEPS must be a positive integer"))?;
        if steps == 1 && start == stop {
            return Ok(vec![start]);
        }
        if steps < 2 {
            return Err(format!("bad sweep '{s}': need at least 2 steps"));
        }
        if stop <= start {
            return Err(format!("bad sweep '{s}': STOP must exceed START"));
        }
        let last = (steps - 1) as f64;
        return Ok((0..steps)
            .map(|i| if i + 1 == steps { stop } else { start + (stop - start) * i as f64 / last })
            .collect());
    }
    s.split(',').map(parse_finite).collect()
}

fn parse_axis(s: &str) -> Result<(f64, f64, usize), String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, n] = parts.as_slice() else {
        return Err(format!("bad grid axis '{s}': expected MIN:MAX:N"));
    };
    let n = n.trim().parse().map_err(|_| format!("bad grid axis '{s}': N must be an integer"))?;
    Ok((parse_finite(lo)?, parse_finite(hi)?, n))
}

/// `XMIN:XMAX:NX[,YMIN:YMAX:NY]`; the y axis copies x when omitted.
pub fn parse_grid(s: &str) -> Result<GridSpec, String> {
    let (x, y) = match s.split_once(',') {
        Some((x, y)) => (parse_axis(x)?, parse_axis(y)?),
        None => {
            let x = parse_axis(s)?;
            (x, x)
        }
    };
    let spec = GridSpec {
        x_min: x.0,
        x_max: x.1,
        nx: x.2,
        y_min: y.0,
        y_max: y.1,
        ny: y.2,
    };
    spec.validate().map_err(|e| e.to_string())?;
    Ok(spec)
}
