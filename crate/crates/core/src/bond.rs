//! Single-period T-Bill valuation arithmetic.
//!
//! The amplitude-estimation pipeline ultimately prices a zero-coupon bill
//! whose value moves on a one-step binomial: face value ends high with
//! probability `p` (rates unchanged) or low with probability `1 - p`
//! (rates rose). Currency amounts are plain `f64`.

use alloc::format;

use crate::error::Error;

/// One-step binomial T-Bill: low/high outcome values and the probability of
/// the no-rate-change (high) branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TBill {
    pub face_value: f64,
    pub v_low: f64,
    pub v_high: f64,
    pub p_no_change: f64,
}

impl TBill {
    pub fn new(face_value: f64, v_low: f64, v_high: f64, p_no_change: f64) -> Result<Self, Error> {
        if !(0.0..=1.0).contains(&p_no_change) {
            return Err(Error::Domain(format!(
                "probability {p_no_change} outside [0, 1]"
            )));
        }
        if v_low > v_high {
            return Err(Error::Domain(format!(
                "v_low {v_low} exceeds v_high {v_high}"
            )));
        }
        Ok(TBill {
            face_value,
            v_low,
            v_high,
            p_no_change,
        })
    }

    /// The $0/$1 bill used throughout the worked examples: estimating p *is*
    /// pricing it.
    pub fn unit() -> Self {
        TBill {
            face_value: 1.0,
            v_low: 0.0,
            v_high: 1.0,
            p_no_change: 0.5,
        }
    }
}

/// Principal compounding at a fixed per-period rate, with an optional rate
/// shift used for the perturbed-discounting branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatePath {
    pub principal: f64,
    pub rate: f64,
    pub shift: f64,
    pub periods: u32,
}

impl RatePath {
    pub fn new(principal: f64, rate: f64, shift: f64, periods: u32) -> Result<Self, Error> {
        if 1.0 + rate <= 0.0 || 1.0 + rate + shift <= 0.0 {
            return Err(Error::Domain(format!(
                "rates must keep 1+r and 1+r+δr positive, got r={rate}, δr={shift}"
            )));
        }
        Ok(RatePath {
            principal,
            rate,
            shift,
            periods,
        })
    }
}

/// Future value after `periods` of compounding: P₀·(1+r)^periods.
pub fn future_value(rp: &RatePath) -> f64 {
    rp.principal * libm::pow(1.0 + rp.rate, rp.periods.into())
}

/// Present value of `face` when rates rise by the shift with probability
/// `1 - p`: (1−p)·face/(1+r+δr) + p·face/(1+r).
pub fn shifted_value(rp: &RatePath, face: f64, p: f64) -> Result<f64, Error> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("probability {p} outside [0, 1]")));
    }
    Ok((1.0 - p) * face / (1.0 + rp.rate + rp.shift) + p * face / (1.0 + rp.rate))
}

/// Expected bill value: (1−p)·v_low + p·v_high.
pub fn expected_value(tb: &TBill) -> f64 {
    (1.0 - tb.p_no_change) * tb.v_low + tb.p_no_change * tb.v_high
}
