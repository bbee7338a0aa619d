//! Sparse multivariate Laurent polynomial and rational-function arithmetic.
//!
//! Coefficients are exact rational combinations of formal parameter monomials
//! (e.g. `q = e^{-L}`), so chart identities can be verified with zero
//! tolerance. Canonical form is a sorted term map with no zero coefficients;
//! structural equality is mathematical equality.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt::Write as _;

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Exact rational representation of an f64 (every finite f64 is rational).
pub fn rat_from_f64(x: f64) -> Rat {
    Rat::from_float(x).expect("finite float")
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().expect("rational in f64 range")
}

/// Coefficient: finite sum of exact rationals times parameter monomials.
///
/// Keys are integer exponent vectors over the shared parameter list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParamCoeff {
    terms: BTreeMap<Vec<i32>, Rat>,
    nparams: usize,
}

impl ParamCoeff {
    pub fn zero(nparams: usize) -> Self {
        ParamCoeff {
            terms: BTreeMap::new(),
            nparams,
        }
    }

    pub fn from_rat(r: Rat, nparams: usize) -> Self {
        let mut c = Self::zero(nparams);
        if !r.is_zero() {
            c.terms.insert(vec![0; nparams], r);
        }
        c
    }

    pub fn one(nparams: usize) -> Self {
        Self::from_rat(Rat::one(), nparams)
    }

    /// `r * p_i` for parameter index `i`.
    pub fn param(i: usize, r: Rat, nparams: usize) -> Self {
        assert!(i < nparams, "parameter index out of range");
        let mut c = Self::zero(nparams);
        if !r.is_zero() {
            let mut e = vec![0; nparams];
            e[i] = 1;
            c.terms.insert(e, r);
        }
        c
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nparams(&self) -> usize {
        self.nparams
    }

    /// The unique term `(exponents, scalar)` if this is a single monomial.
    pub fn single_term(&self) -> Option<(&Vec<i32>, &Rat)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn add(&self, other: &ParamCoeff) -> ParamCoeff {
        assert_eq!(self.nparams, other.nparams, "parameter ring mismatch");
        let mut out = self.clone();
        for (e, r) in &other.terms {
            let entry = out.terms.entry(e.clone()).or_insert_with(Rat::zero);
            *entry += r;
            if entry.is_zero() {
                out.terms.remove(e);
            }
        }
        out
    }

    pub fn neg(&self) -> ParamCoeff {
        let mut out = self.clone();
        for r in out.terms.values_mut() {
            *r = -r.clone();
        }
        out
    }

    pub fn mul(&self, other: &ParamCoeff) -> ParamCoeff {
        assert_eq!(self.nparams, other.nparams, "parameter ring mismatch");
        let mut out = ParamCoeff::zero(self.nparams);
        for (ea, ra) in &self.terms {
            for (eb, rb) in &other.terms {
                let e: Vec<i32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let entry = out.terms.entry(e.clone()).or_insert_with(Rat::zero);
                *entry += ra * rb;
                if entry.is_zero() {
                    out.terms.remove(&e);
                }
            }
        }
        out
    }

    pub fn scale(&self, r: &Rat) -> ParamCoeff {
        if r.is_zero() {
            return ParamCoeff::zero(self.nparams);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = v.clone() * r;
        }
        out
    }

    /// Exact division by a single-monomial coefficient.
    fn div_single(&self, exps: &[i32], scalar: &Rat) -> ParamCoeff {
        let mut out = ParamCoeff::zero(self.nparams);
        for (e, r) in &self.terms {
            let ne: Vec<i32> = e.iter().zip(exps).map(|(a, b)| a - b).collect();
            out.terms.insert(ne, r / scalar);
        }
        out
    }

    pub fn eval(&self, param_values: &[Complex64]) -> Complex64 {
        assert_eq!(param_values.len(), self.nparams, "parameter count mismatch");
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, r) in &self.terms {
            let mut t = Complex64::new(rat_to_f64(r), 0.0);
            for (pv, &k) in param_values.iter().zip(e) {
                t *= pv.powi(k);
            }
            acc += t;
        }
        acc
    }
}

/// Sparse Laurent polynomial over `ParamCoeff` coefficients.
///
/// Terms are keyed by integer exponent vectors in lexicographic order, so two
/// polynomials are equal as values iff they are structurally equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPoly {
    nvars: usize,
    params: Vec<String>,
    terms: BTreeMap<Vec<i32>, ParamCoeff>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize, params: &[&str]) -> Self {
        LaurentPoly {
            nvars,
            params: params.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: ParamCoeff, nvars: usize, params: &[&str]) -> Self {
        let mut p = Self::zero(nvars, params);
        if !c.is_zero() {
            assert_eq!(c.nparams(), params.len(), "parameter ring mismatch");
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize, params: &[&str]) -> Self {
        Self::constant(ParamCoeff::one(params.len()), nvars, params)
    }

    /// The monomial `c * z^exps`.
    pub fn monomial(exps: Vec<i32>, c: ParamCoeff, params: &[&str]) -> Self {
        let nvars = exps.len();
        let mut p = Self::zero(nvars, params);
        if !c.is_zero() {
            assert_eq!(c.nparams(), params.len(), "parameter ring mismatch");
            p.terms.insert(exps, c);
        }
        p
    }

    /// The variable `z_i`.
    pub fn var(i: usize, nvars: usize, params: &[&str]) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, ParamCoeff::one(params.len()), params)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &ParamCoeff)> {
        self.terms.iter()
    }

    fn assert_compatible(&self, other: &LaurentPoly) {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        assert_eq!(self.params, other.params, "parameter ring mismatch");
    }

    fn insert_term(&mut self, e: Vec<i32>, c: ParamCoeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                let sum = existing.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> LaurentPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        self.assert_compatible(other);
        let mut out = Self::zero(self.nvars, &self.param_refs());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<i32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert_term(e, ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, r: &Rat) -> LaurentPoly {
        let mut out = Self::zero(self.nvars, &self.param_refs());
        for (e, c) in &self.terms {
            out.insert_term(e.clone(), c.scale(r));
        }
        out
    }

    fn param_refs(&self) -> Vec<&str> {
        self.params.iter().map(|s| s.as_str()).collect()
    }

    /// Nonnegative power by repeated squaring.
    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut acc = Self::one(self.nvars, &self.param_refs());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// Integer power; negative exponents are only defined for monomials.
    pub fn pow_int(&self, k: i32) -> Result<LaurentPoly> {
        if k >= 0 {
            return Ok(self.pow(k as u32));
        }
        let (e, c) = match self.single_monomial() {
            Some(t) => t,
            None => return Err(Error::NegativePower),
        };
        let (pe, pr) = match c.single_term() {
            Some(t) => t,
            None => return Err(Error::NegativePower),
        };
        let m = -k;
        let ne: Vec<i32> = e.iter().map(|a| -a * m).collect();
        let npe: Vec<i32> = pe.iter().map(|a| -a * m).collect();
        let nr = Rat::one() / pow_rat(pr, m as u32);
        let mut coeff = ParamCoeff::zero(self.params.len());
        coeff.terms.insert(npe, nr);
        Ok(Self::monomial(ne, coeff, &self.param_refs()))
    }

    /// The unique term if this polynomial is a single monomial.
    pub fn single_monomial(&self) -> Option<(&Vec<i32>, &ParamCoeff)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// `z_i d/dz_i`: each term `c z^a` maps to `a_i c z^a`.
    pub fn log_derivative(&self, i: usize) -> LaurentPoly {
        assert!(i < self.nvars, "variable index out of range");
        let mut out = Self::zero(self.nvars, &self.param_refs());
        for (e, c) in &self.terms {
            out.insert_term(e.clone(), c.scale(&rat_int(e[i] as i64)));
        }
        out
    }

    /// Componentwise minimum exponent over all terms (zero vector if empty).
    pub fn min_exponents(&self) -> Vec<i32> {
        let mut min = vec![i32::MAX; self.nvars];
        for e in self.terms.keys() {
            for (m, &x) in min.iter_mut().zip(e) {
                *m = (*m).min(x);
            }
        }
        if self.terms.is_empty() {
            vec![0; self.nvars]
        } else {
            min
        }
    }

    /// Multiply by the monomial `z^shift`.
    pub fn shift(&self, shift: &[i32]) -> LaurentPoly {
        let mut out = Self::zero(self.nvars, &self.param_refs());
        for (e, c) in &self.terms {
            let ne: Vec<i32> = e.iter().zip(shift).map(|(a, b)| a + b).collect();
            out.terms.insert(ne, c.clone());
        }
        out
    }

    /// Lexicographically greatest term.
    fn leading_term(&self) -> Option<(&Vec<i32>, &ParamCoeff)> {
        self.terms.iter().next_back()
    }

    /// Substitute each variable by a Laurent rational in a target ring.
    pub fn substitute(&self, map: &SubstitutionMap) -> Result<LaurentRational> {
        assert_eq!(map.assignments.len(), self.nvars, "map arity mismatch");
        let target = map.target_ring();
        let mut acc = LaurentRational::zero(target.0, &target.1);
        for (e, c) in &self.terms {
            let mut term = LaurentRational::from_poly(LaurentPoly::constant(
                c.clone(),
                target.0,
                &target.1.iter().map(|s| s.as_str()).collect::<Vec<_>>(),
            ));
            for (i, &k) in e.iter().enumerate() {
                if k != 0 {
                    term = term.mul(&map.assignments[i].pow_int(k)?)?;
                }
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Evaluate at a complex point with the given parameter values.
    pub fn eval(&self, z: &[Complex64], param_values: &[Complex64]) -> Result<Complex64> {
        assert_eq!(z.len(), self.nvars, "point dimension mismatch");
        if param_values.len() != self.params.len() {
            return Err(Error::UnassignedParameter(
                self.params
                    .get(param_values.len())
                    .cloned()
                    .unwrap_or_default(),
            ));
        }
        if z.iter().any(|zi| zi.norm() == 0.0) {
            return Err(Error::ZeroCoordinate);
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut t = c.eval(param_values);
            for (zi, &k) in z.iter().zip(e) {
                t *= zi.powi(k);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Canonical text rendering, e.g. `3/2*q^2*z1^-1*z2^3`.
    pub fn render(&self, var_names: &[&str]) -> String {
        assert_eq!(var_names.len(), self.nvars, "name count mismatch");
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let piece = render_term(e, c, var_names, &self.params);
            if i == 0 {
                out.push_str(&piece);
            } else if let Some(rest) = piece.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&piece);
            }
        }
        out
    }
}

fn pow_rat(r: &Rat, k: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..k {
        acc *= r;
    }
    acc
}

fn render_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn render_factors(e: &[i32], names: &[&str]) -> Vec<String> {
    let mut out = Vec::new();
    for (name, &k) in names.iter().zip(e) {
        if k == 1 {
            out.push(name.to_string());
        } else if k != 0 {
            out.push(format!("{}^{}", name, k));
        }
    }
    out
}

fn render_term(e: &[i32], c: &ParamCoeff, var_names: &[&str], params: &[String]) -> String {
    let pnames: Vec<&str> = params.iter().map(|s| s.as_str()).collect();
    let var_factors = render_factors(e, var_names);
    if let Some((pe, r)) = c.single_term() {
        let mut factors = Vec::new();
        let pfactors = render_factors(pe, &pnames);
        let unit = r.is_one() || (-r.clone()).is_one();
        if !unit || (pfactors.is_empty() && var_factors.is_empty()) {
            factors.push(render_rat(r));
        }
        factors.extend(pfactors);
        factors.extend(var_factors);
        let body = factors.join("*");
        if unit && r.is_negative() && !(factors.first().map(|f| f.starts_with('-')) == Some(true)) {
            format!("-{body}")
        } else {
            body
        }
    } else {
        // Multi-term parameter coefficient: parenthesize.
        let mut inner = String::new();
        for (i, (pe, r)) in c.terms.iter().enumerate() {
            let mut fs = Vec::new();
            let pf = render_factors(pe, &pnames);
            if !(r.is_one() && !pf.is_empty()) {
                fs.push(render_rat(r));
            }
            fs.extend(pf);
            let piece = fs.join("*");
            if i == 0 {
                inner.push_str(&piece);
            } else if let Some(rest) = piece.strip_prefix('-') {
                let _ = write!(inner, " - {rest}");
            } else {
                let _ = write!(inner, " + {piece}");
            }
        }
        let mut factors = vec![format!("({inner})")];
        factors.extend(var_factors);
        factors.join("*")
    }
}

/// Laurent rational function as a normalized numerator/denominator pair.
///
/// Normalization: the denominator's monomial content is moved into the
/// numerator (monomials are units in the Laurent ring), an exact-divisibility
/// check clears the denominator entirely when possible, and the denominator's
/// leading rational scalar is normalized to 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentRational {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl LaurentRational {
    pub fn zero(nvars: usize, params: &[String]) -> Self {
        let prefs: Vec<&str> = params.iter().map(|s| s.as_str()).collect();
        LaurentRational {
            num: LaurentPoly::zero(nvars, &prefs),
            den: LaurentPoly::one(nvars, &prefs),
        }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        let one = LaurentPoly::one(p.nvars, &p.param_refs());
        LaurentRational { num: p, den: one }
    }

    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        num.assert_compatible(&den);
        let mut r = LaurentRational { num, den };
        r.normalize();
        Ok(r)
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the denominator normalized away entirely.
    pub fn is_polynomial(&self) -> bool {
        self.den.single_monomial().map_or(false, |(e, c)| {
            e.iter().all(|&k| k == 0) && c.single_term().map_or(false, |(pe, r)| {
                pe.iter().all(|&k| k == 0) && r.is_one()
            })
        })
    }

    /// The numerator, if the denominator is 1.
    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        if self.is_polynomial() {
            Some(&self.num)
        } else {
            None
        }
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = LaurentPoly::one(self.den.nvars, &self.den.param_refs());
            return;
        }
        // Move the denominator's monomial content into the numerator.
        let content = self.den.min_exponents();
        if content.iter().any(|&k| k != 0) {
            let neg: Vec<i32> = content.iter().map(|&k| -k).collect();
            self.den = self.den.shift(&neg);
            self.num = self.num.shift(&neg);
        }
        // Clear the denominator when it divides the numerator exactly.
        if let Some(q) = exact_divide(&self.num, &self.den) {
            self.num = q;
            self.den = LaurentPoly::one(self.den.nvars, &self.den.param_refs());
            // Quotient may carry negative exponents only through the earlier
            // shift; nothing more to do.
        }
        // Normalize the denominator's leading rational scalar to 1.
        if let Some((_, c)) = self.den.leading_term() {
            if let Some((_, r)) = c.single_term() {
                if !r.is_one() {
                    let inv = Rat::one() / r.clone();
                    self.den = self.den.scale(&inv);
                    self.num = self.num.scale(&inv);
                }
            }
        }
    }

    pub fn add(&self, other: &LaurentRational) -> Result<LaurentRational> {
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        LaurentRational::new(num, den)
    }

    pub fn neg(&self) -> LaurentRational {
        LaurentRational {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &LaurentRational) -> Result<LaurentRational> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentRational) -> Result<LaurentRational> {
        LaurentRational::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> Result<LaurentRational> {
        LaurentRational::new(self.den.clone(), self.num.clone())
    }

    pub fn pow_int(&self, k: i32) -> Result<LaurentRational> {
        if k < 0 {
            return self.inv()?.pow_int(-k);
        }
        LaurentRational::new(self.num.pow(k as u32), self.den.pow(k as u32))
    }

    /// Exact equality as rational functions, via cross-multiplication.
    pub fn rational_eq(&self, other: &LaurentRational) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    pub fn substitute(&self, map: &SubstitutionMap) -> Result<LaurentRational> {
        let n = self.num.substitute(map)?;
        let d = self.den.substitute(map)?;
        if d.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        LaurentRational::new(n.num.mul(&d.den), n.den.mul(&d.num))
    }

    pub fn eval(&self, z: &[Complex64], param_values: &[Complex64]) -> Result<Complex64> {
        let d = self.den.eval(z, param_values)?;
        if d.norm() == 0.0 {
            return Err(Error::ZeroDenominator);
        }
        Ok(self.num.eval(z, param_values)? / d)
    }

    pub fn render(&self, var_names: &[&str]) -> String {
        if self.is_polynomial() {
            self.num.render(var_names)
        } else {
            format!("({}) / ({})", self.num.render(var_names), self.den.render(var_names))
        }
    }
}

/// Exact Laurent division: returns `num / den` when the division is exact.
///
/// Both are shifted to ordinary polynomials first; lex long division then
/// either terminates with zero remainder or proves inexactness. Division
/// steps require the divisor's leading coefficient to be a single parameter
/// monomial; otherwise the attempt is abandoned.
fn exact_divide(num: &LaurentPoly, den: &LaurentPoly) -> Option<LaurentPoly> {
    if den.is_zero() {
        return None;
    }
    let num_shift = num.min_exponents();
    let den_shift = den.min_exponents();
    let neg = |v: &[i32]| -> Vec<i32> { v.iter().map(|&k| -k).collect() };
    let n0 = num.shift(&neg(&num_shift));
    let d0 = den.shift(&neg(&den_shift));
    let (lt_e, lt_c) = d0.leading_term()?;
    let (lt_pe, lt_r) = lt_c.single_term()?;
    let lt_e = lt_e.clone();
    let lt_pe = lt_pe.clone();
    let lt_r = lt_r.clone();

    let prefs = num.param_refs();
    let mut quotient = LaurentPoly::zero(num.nvars, &prefs);
    let mut rem = n0;
    while !rem.is_zero() {
        let (re, rc) = rem.leading_term()?;
        let diff: Vec<i32> = re.iter().zip(&lt_e).map(|(a, b)| a - b).collect();
        if diff.iter().any(|&k| k < 0) {
            return None;
        }
        let qc = rc.div_single(&lt_pe, &lt_r);
        let qterm = LaurentPoly::monomial(diff, qc, &prefs);
        rem = rem.sub(&qterm.mul(&d0));
        quotient = quotient.add(&qterm);
    }
    // Undo the monomial shifts: num/den = z^(num_shift - den_shift) * q0.
    let total: Vec<i32> = num_shift
        .iter()
        .zip(&den_shift)
        .map(|(a, b)| a - b)
        .collect();
    Some(quotient.shift(&total))
}

/// Per-variable assignment of Laurent rationals, composable.
///
/// When every assignment is a plain monomial the exponent-lattice matrix is
/// recorded; chart monodromy is read off that matrix.
#[derive(Clone, Debug)]
pub struct SubstitutionMap {
    assignments: Vec<LaurentRational>,
    monomial_part: Option<Vec<Vec<i32>>>,
}

impl SubstitutionMap {
    pub fn new(assignments: Vec<LaurentRational>) -> Result<Self> {
        if assignments.is_empty() {
            return Err(Error::Parse("empty substitution map".into()));
        }
        for a in &assignments {
            if a.is_zero() {
                return Err(Error::ZeroDenominator);
            }
        }
        let monomial_part = monomial_matrix(&assignments);
        Ok(SubstitutionMap {
            assignments,
            monomial_part,
        })
    }

    /// Identity map on `nvars` variables in the given parameter ring.
    pub fn identity(nvars: usize, params: &[&str]) -> Self {
        let assignments = (0..nvars)
            .map(|i| LaurentRational::from_poly(LaurentPoly::var(i, nvars, params)))
            .collect();
        SubstitutionMap::new(assignments).expect("identity map is valid")
    }

    pub fn assignments(&self) -> &[LaurentRational] {
        &self.assignments
    }

    /// Row `i` holds the source exponents of target variable `i`, when the
    /// map is purely monomial (with unit rational coefficient).
    pub fn monomial_part(&self) -> Option<&Vec<Vec<i32>>> {
        self.monomial_part.as_ref()
    }

    fn target_ring(&self) -> (usize, Vec<String>) {
        let a = &self.assignments[0];
        (a.num.nvars, a.num.params.clone())
    }

    /// Apply `other` to every assignment of `self`: substituting with the
    /// result equals substituting with `self` first and `other` second.
    pub fn compose(&self, other: &SubstitutionMap) -> Result<SubstitutionMap> {
        let assignments = self
            .assignments
            .iter()
            .map(|a| a.substitute(other))
            .collect::<Result<Vec<_>>>()?;
        SubstitutionMap::new(assignments)
    }

    /// Evaluate every assignment at a point of the source torus.
    pub fn eval(&self, z: &[Complex64], param_values: &[Complex64]) -> Result<Vec<Complex64>> {
        self.assignments
            .iter()
            .map(|a| a.eval(z, param_values))
            .collect()
    }
}

fn monomial_matrix(assignments: &[LaurentRational]) -> Option<Vec<Vec<i32>>> {
    let mut rows = Vec::with_capacity(assignments.len());
    for a in assignments {
        let p = a.as_poly()?;
        let (e, c) = p.single_monomial()?;
        let (pe, r) = c.single_term()?;
        if !r.is_one() || pe.iter().any(|&k| k != 0) {
            return None;
        }
        rows.push(e.clone());
    }
    Some(rows)
}
