//! Continued-fraction convergents of a positive real number.

/// Iterator over the convergents `p/q` of `x`, in order of increasing `q`.
///
/// Stops when the expansion terminates (remainder below `1e-15`), when the
/// numerators would overflow, or after 64 partial quotients.
#[derive(Debug, Clone)]
pub struct Convergents {
    rest: f64,
    prev: (u64, u64),
    curr: (u64, u64),
    terms: usize,
    done: bool,
}

pub fn convergents(x: f64) -> Convergents {
    Convergents {
        rest: x,
        prev: (0, 1),
        curr: (1, 0),
        terms: 0,
        done: !(x.is_finite() && x >= 0.0),
    }
}

impl Iterator for Convergents {
    type Item = (u64, u64);

    fn next(&mut self) -> Option<(u64, u64)> {
        if self.done || self.terms >= 64 {
            return None;
        }
        let a = self.rest.floor();
        if a > u32::MAX as f64 {
            self.done = true;
            return None;
        }
        let a = a as u64;
        let p = a.checked_mul(self.curr.0)?.checked_add(self.prev.0)?;
        let q = a.checked_mul(self.curr.1)?.checked_add(self.prev.1)?;
        self.prev = self.curr;
        self.curr = (p, q);
        self.terms += 1;

        let frac = self.rest - a as f64;
        if frac < 1e-15 {
            self.done = true;
        } else {
            self.rest = 1.0 / frac;
        }
        Some((p, q))
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
