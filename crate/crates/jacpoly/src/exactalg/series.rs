use super::poly::PuiseuxPoly;
use super::rational::Rational;

/// Power series in an auxiliary variable t, known exactly up to t^order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<PuiseuxPoly>,
    order: usize,
}

impl TruncSeries {
    /// Extra coefficients beyond `order` are dropped, missing ones are zero.
    pub fn new(mut coeffs: Vec<PuiseuxPoly>, order: usize) -> TruncSeries {
        coeffs.truncate(order + 1);
        while coeffs.len() < order + 1 {
            coeffs.push(PuiseuxPoly::zero());
        }
        TruncSeries { coeffs, order }
    }

    pub fn zero(order: usize) -> TruncSeries {
        TruncSeries::new(vec![], order)
    }

    pub fn one(order: usize) -> TruncSeries {
        TruncSeries::new(vec![PuiseuxPoly::one()], order)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, k: usize) -> &PuiseuxPoly {
        assert!(k <= self.order, "t^{k} is beyond the truncation order {}", self.order);
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[PuiseuxPoly] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> TruncSeries {
        TruncSeries::new(self.coeffs.clone(), order.min(self.order))
    }

    pub fn add(&self, o: &TruncSeries) -> TruncSeries {
        let order = self.order.min(o.order);
        TruncSeries::new((0..=order).map(|k| &self.coeffs[k] + &o.coeffs[k]).collect(), order)
    }

    pub fn sub(&self, o: &TruncSeries) -> TruncSeries {
        let order = self.order.min(o.order);
        TruncSeries::new((0..=order).map(|k| &self.coeffs[k] - &o.coeffs[k]).collect(), order)
    }

    pub fn scale(&self, c: &Rational) -> TruncSeries {
        TruncSeries::new(self.coeffs.iter().map(|p| p.scale(c)).collect(), self.order)
    }

    pub fn mul(&self, o: &TruncSeries) -> TruncSeries {
        let order = self.order.min(o.order);
        let mut out = vec![PuiseuxPoly::zero(); order + 1];
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(order - i) {
                if o.coeffs[j].is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(&self.coeffs[i] * &o.coeffs[j]);
            }
        }
        TruncSeries::new(out, order)
    }

    pub fn pow(&self, k: u32) -> TruncSeries {
        let mut r = TruncSeries::one(self.order);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Applies a map to every coefficient.
    pub fn map<F: Fn(&PuiseuxPoly) -> PuiseuxPoly>(&self, f: F) -> TruncSeries {
        TruncSeries::new(self.coeffs.iter().map(f).collect(), self.order)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse;

    #[test]
    fn truncation_is_min_of_orders() {
        let a = TruncSeries::new(vec![parse("1").unwrap(), parse("x").unwrap()], 5);
        let b = TruncSeries::new(vec![parse("1").unwrap(), parse("y").unwrap()], 2);
        let c = a.mul(&b);
        assert_eq!(c.order(), 2);
        assert_eq!(c.coeff(1), &parse("x+y").unwrap());
        assert_eq!(c.coeff(2), &parse("x*y").unwrap());
        let sq = a.pow(2);
        assert_eq!(sq.coeff(2), &parse("x^2").unwrap());
        assert!(sq.coeff(3).is_zero());
    }
}
