//! Closed-form test functions: evaluation, analytic derivatives, declared
//! domains, and what is known a priori about their convexity classes.
//!
//! A [`FuncSpec`] is parsed from a compact config string:
//!
//! ```text
//! power:P            x^P on [0, ∞), P > 0
//! abs-power:P        |x|^P on the reals, P > 0
//! affine:C0,C1       C0 + C1·x
//! quadratic:C0,C1,C2 C0 + C1·x + C2·x²
//! exp:K              e^(K·x)
//! poly:C0,C1,...     Σ Ck·x^k
//! ```
//!
//! Any spec may carry a domain restriction suffix `@A,B`, e.g.
//! `power:0.5@0,4`.
//!
//! Class labels ([`FuncSpec::known_s_convex_on`] and friends) return
//! [`ClassKnowledge::Yes`] or [`ClassKnowledge::No`] only when a short
//! proof exists for the family; everything else is
//! [`ClassKnowledge::Unknown`] and left to the empirical certifier in
//! [`crate::convexity`].

use crate::error::{Error, Result};
use crate::fracint::Interval;

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Power(f64),
    AbsPower(f64),
    Affine(f64, f64),
    Quadratic(f64, f64, f64),
    Exp(f64),
    Poly(Vec<f64>),
}

/// Declared domain of a test function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FnDomain {
    Reals,
    /// The half-line [0, ∞).
    NonNegative,
    Restricted(Interval),
}

impl FnDomain {
    pub fn contains(&self, x: f64) -> bool {
        match self {
            FnDomain::Reals => x.is_finite(),
            FnDomain::NonNegative => x.is_finite() && x >= 0.0,
            FnDomain::Restricted(iv) => iv.contains(x),
        }
    }

    pub fn covers(&self, iv: Interval) -> bool {
        self.contains(iv.a()) && self.contains(iv.b())
    }
}

/// What the family rules can say about membership in a convexity class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassKnowledge {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FuncSpec {
    family: Family,
    domain: FnDomain,
    spec: String,
}

fn fmt_args(args: &[f64]) -> String {
    args.iter()
        .map(|v| format!("{v}"))
        .collect::<Vec<_>>()
        .join(",")
}

impl FuncSpec {
    pub fn new(family: Family, restriction: Option<Interval>) -> Result<Self> {
        let base = match &family {
            Family::Power(p) | Family::AbsPower(p) => {
                if !(*p > 0.0 && p.is_finite()) {
                    return Err(Error::Parse(format!("power exponent must be > 0, got {p}")));
                }
                if matches!(family, Family::Power(_)) {
                    FnDomain::NonNegative
                } else {
                    FnDomain::Reals
                }
            }
            Family::Affine(c0, c1) => {
                if !c0.is_finite() || !c1.is_finite() {
                    return Err(Error::Parse("affine coefficients must be finite".into()));
                }
                FnDomain::Reals
            }
            Family::Quadratic(c0, c1, c2) => {
                if ![c0, c1, c2].iter().all(|c| c.is_finite()) {
                    return Err(Error::Parse("quadratic coefficients must be finite".into()));
                }
                FnDomain::Reals
            }
            Family::Exp(k) => {
                if !k.is_finite() {
                    return Err(Error::Parse("exp rate must be finite".into()));
                }
                FnDomain::Reals
            }
            Family::Poly(c) => {
                if c.is_empty() {
                    return Err(Error::Parse("poly needs at least one coefficient".into()));
                }
                if !c.iter().all(|v| v.is_finite()) {
                    return Err(Error::Parse("poly coefficients must be finite".into()));
                }
                FnDomain::Reals
            }
        };
        let domain = match restriction {
            None => base,
            Some(iv) => {
                if !base.covers(iv) {
                    return Err(Error::Parse(format!(
                        "domain restriction {iv} falls outside the family's natural domain"
                    )));
                }
                FnDomain::Restricted(iv)
            }
        };
        let mut spec = match &family {
            Family::Power(p) => format!("power:{p}"),
            Family::AbsPower(p) => format!("abs-power:{p}"),
            Family::Affine(c0, c1) => format!("affine:{}", fmt_args(&[*c0, *c1])),
            Family::Quadratic(c0, c1, c2) => format!("quadratic:{}", fmt_args(&[*c0, *c1, *c2])),
            Family::Exp(k) => format!("exp:{k}"),
            Family::Poly(c) => format!("poly:{}", fmt_args(c)),
        };
        if let FnDomain::Restricted(iv) = domain {
            spec.push_str(&format!("@{},{}", iv.a(), iv.b()));
        }
        Ok(FuncSpec {
            family,
            domain,
            spec,
        })
    }

    /// Parse a config string; see the module docs for the grammar.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (body, restriction) = match s.split_once('@') {
            None => (s, None),
            Some((body, dom)) => {
                let parts = parse_floats(dom)?;
                if parts.len() != 2 {
                    return Err(Error::Parse(format!("domain suffix needs two numbers, got `{dom}`")));
                }
                (body, Some(Interval::new(parts[0], parts[1])?))
            }
        };
        let (name, args) = body
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected `family:args`, got `{s}`")))?;
        let args = parse_floats(args)?;
        let family = match (name, args.len()) {
            ("power", 1) => Family::Power(args[0]),
            ("abs-power", 1) => Family::AbsPower(args[0]),
            ("affine", 2) => Family::Affine(args[0], args[1]),
            ("quadratic", 3) => Family::Quadratic(args[0], args[1], args[2]),
            ("exp", 1) => Family::Exp(args[0]),
            ("poly", n) if n >= 1 => Family::Poly(args),
            _ => {
                return Err(Error::Parse(format!(
                    "unknown family or wrong arity in `{s}` (families: power:p, abs-power:p, \
                     affine:c0,c1, quadratic:c0,c1,c2, exp:k, poly:c0,...)"
                )))
            }
        };
        FuncSpec::new(family, restriction)
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn domain(&self) -> FnDomain {
        self.domain
    }

    /// Canonical config string; also the `Display` form.
    pub fn spec_str(&self) -> &str {
        &self.spec
    }

    pub fn contains(&self, x: f64) -> bool {
        self.domain.contains(x)
    }

    pub fn covers(&self, iv: Interval) -> bool {
        self.domain.covers(iv)
    }

    pub fn eval(&self, x: f64) -> f64 {
        debug_assert!(self.contains(x), "{} evaluated outside its domain at {x}", self.spec);
        match &self.family {
            Family::Power(p) => x.powf(*p),
            Family::AbsPower(p) => x.abs().powf(*p),
            Family::Affine(c0, c1) => c0 + c1 * x,
            Family::Quadratic(c0, c1, c2) => c0 + x * (c1 + c2 * x),
            Family::Exp(k) => (k * x).exp(),
            Family::Poly(c) => c.iter().rev().fold(0.0, |acc, ck| acc * x + ck),
        }
    }

    pub fn deriv(&self, x: f64) -> f64 {
        match &self.family {
            Family::Power(p) => p * x.powf(p - 1.0),
            Family::AbsPower(p) => p * x.abs().powf(p - 1.0) * x.signum(),
            Family::Affine(_, c1) => *c1,
            Family::Quadratic(_, c1, c2) => c1 + 2.0 * c2 * x,
            Family::Exp(k) => k * (k * x).exp(),
            Family::Poly(c) => {
                let mut acc = 0.0;
                for (k, ck) in c.iter().enumerate().skip(1).rev() {
                    acc = acc * x + k as f64 * ck;
                }
                acc
            }
        }
    }

    /// Whether the analytic derivative is defined and finite throughout
    /// `iv`, endpoints included.
    pub fn has_derivative_on(&self, iv: Interval) -> bool {
        if !self.covers(iv) {
            return false;
        }
        match &self.family {
            Family::Power(p) => *p >= 1.0 || iv.a() > 0.0,
            Family::AbsPower(p) => {
                // p = 1 has a kink at the origin and p < 1 an unbounded
                // derivative there; both need the interval to avoid zero.
                *p > 1.0 || !iv.contains(0.0)
            }
            _ => true,
        }
    }

    /// Exact minimum over `iv` where the family allows it, otherwise a
    /// 129-point sampled minimum.
    pub fn min_on(&self, iv: Interval) -> f64 {
        match &self.family {
            Family::Affine(..) => self.eval(iv.a()).min(self.eval(iv.b())),
            Family::Quadratic(_, c1, c2) => {
                let mut m = self.eval(iv.a()).min(self.eval(iv.b()));
                if *c2 > 0.0 {
                    let vertex = -c1 / (2.0 * c2);
                    if iv.contains(vertex) {
                        m = m.min(self.eval(vertex));
                    }
                }
                m
            }
            Family::Power(_) | Family::AbsPower(_) => {
                // nonnegative; minimum at the endpoint closest to zero
                if iv.contains(0.0) {
                    0.0
                } else {
                    self.eval(iv.a()).min(self.eval(iv.b()))
                }
            }
            Family::Exp(_) => self.eval(iv.a()).min(self.eval(iv.b())),
            Family::Poly(_) => {
                let n = 128;
                let mut m = f64::INFINITY;
                for i in 0..=n {
                    let x = iv.a() + iv.length() * i as f64 / n as f64;
                    m = m.min(self.eval(x));
                }
                m
            }
        }
    }

    fn poly_second_deriv(c: &[f64], x: f64) -> f64 {
        let mut acc = 0.0;
        for (k, ck) in c.iter().enumerate().skip(2).rev() {
            acc = acc * x + (k * (k - 1)) as f64 * ck;
        }
        acc
    }

    /// Is the function convex on `iv`?
    pub fn known_convex_on(&self, iv: Interval) -> ClassKnowledge {
        use ClassKnowledge::*;
        match &self.family {
            Family::Affine(..) => Yes,
            Family::Exp(_) => Yes,
            Family::Quadratic(_, _, c2) => {
                if *c2 >= 0.0 {
                    Yes
                } else {
                    No
                }
            }
            Family::Power(p) => {
                if *p >= 1.0 {
                    Yes
                } else {
                    No
                }
            }
            Family::AbsPower(p) => {
                if *p >= 1.0 {
                    Yes
                } else {
                    No
                }
            }
            Family::Poly(c) => {
                if c.len() <= 2 {
                    return Yes;
                }
                if c.len() == 3 {
                    return if c[2] >= 0.0 { Yes } else { No };
                }
                if iv.a() >= 0.0 && c.iter().skip(2).all(|v| *v >= 0.0) {
                    return Yes;
                }
                // A strictly negative second derivative anywhere refutes
                // convexity on the interval.
                let n = 128;
                for i in 0..=n {
                    let x = iv.a() + iv.length() * i as f64 / n as f64;
                    if Self::poly_second_deriv(c, x) < -1e-12 {
                        return No;
                    }
                }
                Unknown
            }
        }
    }

    /// Is the function s-convex in the second sense on `iv` ⊂ [0, ∞)?
    ///
    /// For s < 1, membership forces f >= 0, so a sampled negative value is a
    /// proof of `No`. A nonnegative convex function is s-convex for every
    /// s in (0, 1], which covers most families; `power:p` with p < 1 is
    /// exactly p-convex, hence `Yes` for s <= p and refutable at s > p when
    /// the interval reaches 0.
    pub fn known_s_convex_on(&self, s: f64, iv: Interval) -> ClassKnowledge {
        use ClassKnowledge::*;
        if iv.a() < 0.0 {
            return No;
        }
        if s == 1.0 {
            return self.known_convex_on(iv);
        }
        match &self.family {
            Family::Power(p) | Family::AbsPower(p) => {
                if *p >= 1.0 || s <= *p {
                    Yes
                } else if iv.a() == 0.0 {
                    No
                } else {
                    Unknown
                }
            }
            Family::Affine(..) => {
                if self.min_on(iv) >= 0.0 {
                    Yes
                } else {
                    No
                }
            }
            Family::Quadratic(_, _, c2) => {
                if self.min_on(iv) < 0.0 {
                    No
                } else if *c2 >= 0.0 {
                    Yes
                } else {
                    Unknown
                }
            }
            Family::Exp(_) => Yes,
            Family::Poly(c) => {
                if c.iter().all(|v| *v >= 0.0) {
                    Yes
                } else if self.min_on(iv) < 0.0 {
                    No
                } else {
                    Unknown
                }
            }
        }
    }

    /// Is the function m-convex on [0, upper]?
    ///
    /// Membership at m < 1 forces f(0) <= 0 (take t = 0, y = 0), which
    /// refutes the families with a positive value at the origin. Convexity
    /// plus f(m·y) <= m·f(y) is sufficient, which yields closed-form rules
    /// for the polynomial families.
    pub fn known_m_convex_on(&self, m: f64, upper: f64) -> ClassKnowledge {
        use ClassKnowledge::*;
        let iv = match Interval::new(0.0, upper) {
            Ok(iv) => iv,
            Err(_) => return No,
        };
        if m == 1.0 {
            return self.known_convex_on(iv);
        }
        match &self.family {
            Family::Power(p) | Family::AbsPower(p) => {
                if *p >= 1.0 {
                    Yes
                } else {
                    No
                }
            }
            Family::Affine(c0, _) => {
                if *c0 <= 0.0 {
                    Yes
                } else {
                    No
                }
            }
            Family::Quadratic(c0, _, c2) => {
                if *c0 > 0.0 {
                    No
                } else if *c2 >= 0.0 {
                    Yes
                } else {
                    Unknown
                }
            }
            Family::Exp(_) => No,
            Family::Poly(c) => {
                if c[0] > 0.0 {
                    No
                } else if c.iter().skip(1).all(|v| *v >= 0.0) {
                    Yes
                } else {
                    Unknown
                }
            }
        }
    }

    /// Is |f'|^q s-convex in the second sense on `iv` ⊂ [0, ∞)?
    ///
    /// This is the hypothesis of the trapezoid-gap bounds. For the
    /// polynomial-like families |f'|^q is again of power/|linear|^q type and
    /// the rules mirror [`FuncSpec::known_s_convex_on`].
    pub fn known_deriv_q_s_convex_on(&self, q: f64, s: f64, iv: Interval) -> ClassKnowledge {
        use ClassKnowledge::*;
        if iv.a() < 0.0 || !self.has_derivative_on(iv) {
            return No;
        }
        match &self.family {
            Family::Affine(..) => Yes,      // constant >= 0
            Family::Quadratic(..) => Yes,   // |linear|^q, convex and nonnegative
            Family::Exp(_) => Yes,          // positive multiple of e^(qkx)
            Family::Power(p) | Family::AbsPower(p) => {
                if (*p - 1.0).abs() == 0.0 {
                    return Yes; // constant
                }
                if *p < 1.0 {
                    // derivative gate guarantees iv.a > 0: positive convex
                    return Yes;
                }
                let r = (*p - 1.0) * q;
                if r >= 1.0 || s <= r {
                    Yes
                } else if iv.a() == 0.0 {
                    No
                } else {
                    Unknown
                }
            }
            Family::Poly(_) => Unknown,
        }
    }
}

impl std::fmt::Display for FuncSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.spec)
    }
}

impl std::str::FromStr for FuncSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FuncSpec::parse(s)
    }
}

fn parse_floats(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("`{p}` is not a number")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(a: f64, b: f64) -> Interval {
        Interval::new(a, b).unwrap()
    }

    #[test]
    fn parse_and_roundtrip() {
        for s in [
            "power:0.5",
            "abs-power:1.5",
            "affine:0,1",
            "quadratic:0,0,1",
            "exp:1",
            "poly:0,-3,2",
            "power:0.5@0,4",
        ] {
            let f = FuncSpec::parse(s).unwrap();
            assert_eq!(f.spec_str(), s);
            let again = FuncSpec::parse(f.spec_str()).unwrap();
            assert_eq!(f, again);
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in [
            "power",
            "power:",
            "power:-1",
            "power:0",
            "nope:1",
            "affine:1",
            "quadratic:1,2",
            "poly:",
            "exp:inf",
            "power:0.5@4,0",
        ] {
            assert!(FuncSpec::parse(s).is_err(), "`{s}` should not parse");
        }
    }

    #[test]
    fn evaluation_matches_hand_values() {
        let f = FuncSpec::parse("poly:1,-3,2").unwrap();
        assert_eq!(f.eval(0.0), 1.0);
        assert_eq!(f.eval(1.0), 0.0);
        assert_eq!(f.eval(2.0), 3.0);
        let g = FuncSpec::parse("quadratic:0,0,1").unwrap();
        assert_eq!(g.eval(3.0), 9.0);
        let h = FuncSpec::parse("abs-power:2").unwrap();
        assert_eq!(h.eval(-2.0), 4.0);
    }

    #[test]
    fn derivative_matches_central_differences() {
        let corpus = [
            "power:0.5",
            "power:2",
            "power:3",
            "abs-power:1.5",
            "affine:1,2",
            "quadratic:1,-1,3",
            "exp:0.7",
            "poly:0,1,1,0.25",
        ];
        for s in corpus {
            let f = FuncSpec::parse(s).unwrap();
            for i in 1..=20 {
                let x = 0.2 + 0.15 * i as f64; // stays inside (0, inf)
                let h = 1e-5 * x.max(1.0);
                let fd = (f.eval(x + h) - f.eval(x - h)) / (2.0 * h);
                let an = f.deriv(x);
                let scale = an.abs().max(1.0);
                assert!(
                    ((fd - an) / scale).abs() < 1e-6,
                    "{s} at x={x}: analytic {an} vs central {fd}"
                );
            }
        }
    }

    #[test]
    fn derivative_availability() {
        let sqrt = FuncSpec::parse("power:0.5").unwrap();
        assert!(!sqrt.has_derivative_on(iv(0.0, 1.0)));
        assert!(sqrt.has_derivative_on(iv(0.5, 2.0)));
        let absx = FuncSpec::parse("abs-power:1").unwrap();
        assert!(!absx.has_derivative_on(iv(-1.0, 1.0)));
        assert!(!absx.has_derivative_on(iv(0.0, 1.0)));
        assert!(absx.has_derivative_on(iv(0.5, 1.0)));
        assert!(FuncSpec::parse("abs-power:2").unwrap().has_derivative_on(iv(-1.0, 1.0)));
        let sq = FuncSpec::parse("power:2").unwrap();
        assert!(sq.has_derivative_on(iv(0.0, 1.0)));
    }

    #[test]
    fn domain_gating() {
        let f = FuncSpec::parse("power:0.5").unwrap();
        assert!(!f.contains(-0.1));
        assert!(f.contains(0.0));
        let g = FuncSpec::parse("power:0.5@0,4").unwrap();
        assert!(!g.contains(4.5));
        assert!(!g.covers(iv(0.0, 8.0)));
        assert!(g.covers(iv(0.0, 4.0)));
    }

    #[test]
    fn s_convexity_labels() {
        let xs = FuncSpec::parse("power:0.5").unwrap();
        assert_eq!(xs.known_s_convex_on(0.5, iv(0.0, 2.0)), ClassKnowledge::Yes);
        assert_eq!(xs.known_s_convex_on(0.25, iv(0.0, 2.0)), ClassKnowledge::Yes);
        assert_eq!(xs.known_s_convex_on(0.9, iv(0.0, 2.0)), ClassKnowledge::No);
        assert_eq!(xs.known_s_convex_on(0.9, iv(0.5, 2.0)), ClassKnowledge::Unknown);

        let sq = FuncSpec::parse("quadratic:0,0,1").unwrap();
        assert_eq!(sq.known_s_convex_on(0.25, iv(0.0, 1.0)), ClassKnowledge::Yes);
        assert_eq!(sq.known_s_convex_on(1.0, iv(0.0, 1.0)), ClassKnowledge::Yes);

        let shifted = FuncSpec::parse("quadratic:-1,0,1").unwrap();
        assert_eq!(shifted.known_s_convex_on(0.5, iv(0.0, 1.0)), ClassKnowledge::No);
        assert_eq!(shifted.known_s_convex_on(1.0, iv(0.0, 1.0)), ClassKnowledge::Yes);

        let neg = FuncSpec::parse("quadratic:0,0,-1").unwrap();
        assert_eq!(neg.known_s_convex_on(1.0, iv(0.0, 1.0)), ClassKnowledge::No);
    }

    #[test]
    fn m_convexity_labels() {
        let sq = FuncSpec::parse("quadratic:0,0,1").unwrap();
        assert_eq!(sq.known_m_convex_on(0.5, 1.0), ClassKnowledge::Yes);
        assert_eq!(sq.known_m_convex_on(1.0, 1.0), ClassKnowledge::Yes);

        let lifted = FuncSpec::parse("quadratic:1,0,1").unwrap();
        assert_eq!(lifted.known_m_convex_on(0.5, 1.0), ClassKnowledge::No);
        assert_eq!(lifted.known_m_convex_on(1.0, 1.0), ClassKnowledge::Yes);

        let e = FuncSpec::parse("exp:1").unwrap();
        assert_eq!(e.known_m_convex_on(0.5, 1.0), ClassKnowledge::No);
        assert_eq!(e.known_m_convex_on(1.0, 1.0), ClassKnowledge::Yes);

        let root = FuncSpec::parse("power:0.5").unwrap();
        assert_eq!(root.known_m_convex_on(0.5, 1.0), ClassKnowledge::No);

        let line = FuncSpec::parse("affine:0,1").unwrap();
        assert_eq!(line.known_m_convex_on(0.25, 2.0), ClassKnowledge::Yes);
    }

    #[test]
    fn derivative_class_labels() {
        let sq = FuncSpec::parse("quadratic:0,0,1").unwrap();
        assert_eq!(sq.known_deriv_q_s_convex_on(2.0, 0.5, iv(0.0, 1.0)), ClassKnowledge::Yes);

        // f = x^1.5: |f'|^q ~ x^(0.5 q); at q = 1 this is 0.5-convex.
        let p15 = FuncSpec::parse("power:1.5").unwrap();
        assert_eq!(p15.known_deriv_q_s_convex_on(1.0, 0.5, iv(0.0, 1.0)), ClassKnowledge::Yes);
        assert_eq!(p15.known_deriv_q_s_convex_on(1.0, 0.9, iv(0.0, 1.0)), ClassKnowledge::No);
        assert_eq!(p15.known_deriv_q_s_convex_on(2.0, 0.9, iv(0.0, 1.0)), ClassKnowledge::Yes);

        // f = sqrt(x) has no usable derivative on [0, 1]:
        let root = FuncSpec::parse("power:0.5").unwrap();
        assert_eq!(root.known_deriv_q_s_convex_on(1.0, 0.5, iv(0.0, 1.0)), ClassKnowledge::No);
        assert_eq!(root.known_deriv_q_s_convex_on(1.0, 0.5, iv(0.5, 2.0)), ClassKnowledge::Yes);
    }

    #[test]
    fn sampled_minimum() {
        let f = FuncSpec::parse("quadratic:1,-2,1").unwrap(); // (x-1)^2
        assert_eq!(f.min_on(iv(0.0, 2.0)), 0.0);
        assert_eq!(f.min_on(iv(2.0, 3.0)), 1.0);
        let p = FuncSpec::parse("poly:1,-3,2").unwrap(); // 1 - 3x + 2x^2, min at 0.75
        assert!((p.min_on(iv(0.0, 1.0)) - (-0.125)).abs() < 1e-2);
    }
}
