use crate::error::{Error, Result};

/// Kullback-Leibler divergence in bits, with `0 log 0 = 0`. Infinite when
/// `q` lacks support that `p` has.
pub fn kld(p: &[f64], q: &[f64]) -> Result<f64> {
    check(p, q)?;
    Ok(p.iter()
        .zip(q)
        .filter(|(&pi, _)| pi > 0.0)
        .map(|(&pi, &qi)| if qi > 0.0 { pi * (pi / qi).log2() } else { f64::INFINITY })
        .sum())
}

/// Jensen-Shannon divergence in bits: `(KLD(p, m) + KLD(q, m)) / 2` with
/// `m = (p + q) / 2`. Lies in `[0, 1]`.
pub fn jsd(p: &[f64], q: &[f64]) -> Result<f64> {
    check(p, q)?;
    let m: Vec<f64> = p.iter().zip(q).map(|(a, b)| 0.5 * (a + b)).collect();
    let d = 0.5 * (kld(p, &m)? + kld(q, &m)?);
    Ok(d.clamp(0.0, 1.0))
}

fn check(p: &[f64], q: &[f64]) -> Result<()> {
    if p.len() != q.len() {
        return Err(Error::InvalidArgument(format!(
            "histogram lengths differ: {} vs {}",
            p.len(),
            q.len()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities() {
        assert_eq!(jsd(&[0.2, 0.8], &[0.2, 0.8]).unwrap(), 0.0);
        assert_eq!(jsd(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 1.0);
        assert!(jsd(&[1.0], &[0.5, 0.5]).is_err());
        assert_eq!(kld(&[0.5, 0.5], &[1.0, 0.0]).unwrap(), f64::INFINITY);
    }

    #[test]
    fn reference_value() {
        // (KLD(p,m) + KLD(q,m))/2 with m = [0.7, 0.3], evaluated by hand.
        let v = jsd(&[0.5, 0.5], &[0.9, 0.1]).unwrap();
        assert!((v - 0.14679).abs() < 1e-4, "{v}");
    }
}
