//! Decimal serialization of balls and boxes, `[m +/- r]`.
//!
//! Printing is lossy in the midpoint (decimal digits are chosen to match the
//! binary precision) but never in the containment sense: the printed radius
//! is inflated by the midpoint's own printing error, so parsing a serialized
//! ball always yields a superset of the original.

use crate::complex::ComplexBox;
use crate::error::Error;
use crate::mag::{Mag, MAG_PREC};
use crate::real::RealBall;
use rug::float::Round;
use rug::Float;
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// Decimal digits that faithfully carry `bits` binary digits, plus slack.
fn digits_for(bits: u32) -> usize {
    (bits as f64 * std::f64::consts::LOG10_2).ceil() as usize + 2
}

impl fmt::Display for RealBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serialize_real(self))
    }
}

impl fmt::Display for ComplexBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            write!(f, "{}", serialize_real(self.re()))
        } else {
            write!(f, "{} + {}*I", serialize_real(self.re()), serialize_real(self.im()))
        }
    }
}

fn serialize_real(x: &RealBall) -> String {
    if x.is_indeterminate() {
        return "nan".to_string();
    }
    if x.mid().is_zero() {
        return format!("[+/- {}]", x.rad());
    }
    let digits = digits_for(x.mid().prec());
    let mid_str = x.mid().to_string_radix_round(10, Some(digits), Round::Nearest);
    // The printed midpoint is a rounding of the true one; widen the printed
    // radius so that the string still denotes a superset.
    let reparsed = Float::with_val_round(
        x.mid().prec() + 32,
        Float::parse(&mid_str).expect("own output reparses"),
        Round::Nearest,
    )
    .0;
    let print_err = {
        let (d, _) = Float::with_val_round(MAG_PREC, x.mid() - &reparsed, Round::Up);
        let (d2, _) = Float::with_val_round(MAG_PREC, &reparsed - x.mid(), Round::Up);
        Mag::from_float_up(&d).maximum(&Mag::from_float_up(&d2))
    };
    let rad = x.rad().add_up(&print_err);
    format!("[{} +/- {}]", mid_str, rad)
}

impl FromStr for RealBall {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_real(s)
    }
}

impl FromStr for ComplexBox {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(body) = s.strip_suffix("*I") {
            if let Some(split) = body.rfind("+ ") {
                let (re_part, im_part) = body.split_at(split);
                let re_part = re_part.trim().trim_end_matches('+').trim();
                let im_part = im_part.trim_start_matches('+').trim();
                return Ok(ComplexBox::new(parse_real(re_part)?, parse_real(im_part)?));
            }
            return Err(Error::Parse(s.to_string()));
        }
        Ok(ComplexBox::from_real(parse_real(s)?))
    }
}

fn parse_real(s: &str) -> Result<RealBall, Error> {
    let t = s.trim();
    if t.eq_ignore_ascii_case("nan") {
        return Ok(RealBall::indeterminate());
    }
    let inner = t
        .strip_prefix('[')
        .and_then(|u| u.strip_suffix(']'))
        .unwrap_or(t);
    let (mid_str, rad_str) = match inner.split_once("+/-") {
        Some((m, r)) => (m.trim(), r.trim()),
        None => (inner.trim(), "0"),
    };
    let rad = Mag::parse_up(rad_str).ok_or_else(|| Error::Parse(s.to_string()))?;
    if mid_str.is_empty() {
        return Ok(RealBall::from_midrad(Float::with_val(MAG_PREC, 0), rad));
    }
    let incomplete = Float::parse(mid_str).map_err(|_| Error::Parse(s.to_string()))?;
    // Parse at a precision exceeding the string's information content, then
    // absorb the final rounding (if any) into the radius.
    let bits = ((mid_str.len() as f64) * 3.4).ceil() as u32 + 32;
    let (mid, ord) = Float::with_val_round(bits, incomplete, Round::Nearest);
    if !mid.is_finite() {
        return Ok(RealBall::indeterminate());
    }
    let rad = if ord != Ordering::Equal {
        rad.add_up(&Mag::ulp_of(&mid))
    } else {
        rad
    };
    Ok(RealBall::from_midrad(mid, rad))
}
