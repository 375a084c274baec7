use rand_distr::{Distribution, Gamma};

use crate::{DistError, RngStream};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaParams {
    shape: f64,
    scale: f64,
}

impl GammaParams {
    pub fn new(shape: f64, scale: f64) -> Result<Self, DistError> {
        if !(shape > 0.0 && shape.is_finite()) {
            return Err(DistError::InvalidShape(shape));
        }
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(DistError::InvalidScale(scale));
        }
        Ok(Self { shape, scale })
    }

    /// Unit-scale Gamma.
    pub fn unit(shape: f64) -> Result<Self, DistError> {
        Self::new(shape, 1.0)
    }

    pub fn shape(&self) -> f64 {
        self.shape
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn mean(&self) -> f64 {
        self.shape * self.scale
    }

    pub fn variance(&self) -> f64 {
        self.shape * self.scale * self.scale
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaParams {
    alpha: f64,
    beta: f64,
}

impl BetaParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self, DistError> {
        let ok = |v: f64| v > 0.0 && v.is_finite();
        if !(ok(alpha) && ok(beta)) {
            return Err(DistError::InvalidBeta(alpha, beta));
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn mean(&self) -> f64 {
        self.alpha / (self.alpha + self.beta)
    }
}

/// Reusable Gamma sampler for hot loops with a fixed shape.
///
/// Shapes below one are drawn as `Y * U^(1/shape)` with `Y ~ Gamma(shape + 1)`,
/// evaluated in log space so that tiny shapes never collapse to zero.
#[derive(Debug, Clone, Copy)]
pub struct GammaSampler {
    core: Gamma<f64>,
    boosted: bool,
    inv_shape: f64,
    log_scale: f64,
    scale: f64,
}

impl GammaSampler {
    pub fn new(p: GammaParams) -> Self {
        let boosted = p.shape < 1.0;
        let core_shape = if boosted { p.shape + 1.0 } else { p.shape };
        Self {
            core: Gamma::new(core_shape, 1.0).expect("validated shape"),
            boosted,
            inv_shape: 1.0 / p.shape,
            log_scale: p.scale.ln(),
            scale: p.scale,
        }
    }

    /// Unit-scale sampler; panics on a non-positive shape.
    pub fn unit(shape: f64) -> Self {
        Self::new(GammaParams::unit(shape).expect("positive shape"))
    }

    #[inline]
    pub fn sample(&self, rng: &mut RngStream) -> f64 {
        let x = if self.boosted {
            self.sample_log(rng).exp()
        } else {
            self.core.sample(rng) * self.scale
        };
        x.max(f64::MIN_POSITIVE)
    }

    /// Natural log of a draw; finite for any admissible shape.
    #[inline]
    pub fn sample_log(&self, rng: &mut RngStream) -> f64 {
        let y = self.core.sample(rng).max(f64::MIN_POSITIVE);
        if self.boosted {
            y.ln() + rng.open_uniform().ln() * self.inv_shape + self.log_scale
        } else {
            y.ln() + self.log_scale
        }
    }
}

pub fn sample_gamma(rng: &mut RngStream, p: GammaParams) -> f64 {
    GammaSampler::new(p).sample(rng)
}

pub fn sample_log_gamma(rng: &mut RngStream, p: GammaParams) -> f64 {
    GammaSampler::new(p).sample_log(rng)
}

/// Reciprocal of a Gamma(shape, 1/scale) draw, i.e. inverse-Gamma with the given scale.
pub fn sample_inv_gamma(rng: &mut RngStream, p: GammaParams) -> f64 {
    let g = GammaParams::new(p.shape, 1.0 / p.scale).expect("validated");
    (-sample_log_gamma(rng, g)).exp().min(f64::MAX)
}

/// `log B` for `B ~ Beta(alpha, beta)`, computed from two log-Gamma draws.
pub fn sample_log_beta(rng: &mut RngStream, p: BetaParams) -> f64 {
    let lx = GammaSampler::unit(p.alpha).sample_log(rng);
    let ly = GammaSampler::unit(p.beta).sample_log(rng);
    // log(x / (x + y)) = -log(1 + exp(ly - lx))
    -softplus(ly - lx)
}

pub fn sample_beta(rng: &mut RngStream, p: BetaParams) -> f64 {
    let b = sample_log_beta(rng, p).exp();
    b.clamp(f64::MIN_POSITIVE, 1.0f64.next_down())
}

/// Reciprocal of a Beta draw, in (1, inf).
pub fn sample_inv_beta(rng: &mut RngStream, p: BetaParams) -> f64 {
    (-sample_log_beta(rng, p)).exp().max(1.0f64.next_up())
}

#[inline]
fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_params() {
        assert!(GammaParams::new(0.0, 1.0).is_err());
        assert!(GammaParams::new(1.0, -1.0).is_err());
        assert!(GammaParams::new(f64::NAN, 1.0).is_err());
        assert!(BetaParams::new(1.0, 0.0).is_err());
    }

    #[test]
    fn tiny_shape_log_is_finite() {
        let mut rng = RngStream::new(3, 0);
        let s = GammaSampler::unit(0.005);
        for _ in 0..10_000 {
            let l = s.sample_log(&mut rng);
            assert!(l.is_finite());
            assert!(s.sample(&mut rng) > 0.0);
        }
    }

    #[test]
    fn beta_stays_open() {
        let mut rng = RngStream::new(4, 0);
        let p = BetaParams::new(0.01, 0.01).unwrap();
        for _ in 0..10_000 {
            let b = sample_beta(&mut rng, p);
            assert!(b > 0.0 && b < 1.0);
        }
    }
}
