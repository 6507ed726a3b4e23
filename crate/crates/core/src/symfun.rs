//! Exact symmetric polynomials in a fixed number of variables.
//!
//! [`SymPoly`] stores coefficients in the monomial symmetric basis, indexed by
//! partitions with at most `nvars` parts; products only visit sorted exponent
//! vectors. [`Poly`] is the fully expanded form used for the JSON surface and
//! for cross-checks.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::shapes::{Partition, SkewShape};
use crate::strips::{glue_right, glue_up};

/// All partitions of `n` with at most `max_parts` parts, largest part first.
pub fn partitions_of(n: usize, max_parts: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max_part: usize, parts_left: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        if parts_left == 0 {
            return;
        }
        for part in (1..=max_part.min(n)).rev() {
            prefix.push(part);
            go(n - part, part, parts_left - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, max_parts, &mut Vec::new(), &mut out);
    out
}

/// A polynomial with integer coefficients in `nvars` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exp: Vec<u32>, coef: BigInt) {
        assert_eq!(exp.len(), self.nvars, "exponent length");
        let slot = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *slot += coef;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        check_vars(self.nvars, other.nvars)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        check_vars(self.nvars, other.nvars)?;
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    /// The polynomial with variables `a` and `b` exchanged.
    pub fn swap_vars(&self, a: usize, b: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            e.swap(a, b);
            out.terms.insert(e, c.clone());
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        (1..self.nvars).all(|k| self.swap_vars(k - 1, k) == *self)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(e, c)| json!({"exp": e, "coef": bigint_json(c)}))
            .collect();
        json!({"nvars": self.nvars, "terms": terms})
    }

    pub fn from_json(value: &Value) -> Result<Poly> {
        let bad = |reason: &str| Error::Parse {
            text: value.to_string(),
            reason: reason.to_string(),
        };
        let nvars = value["nvars"].as_u64().ok_or_else(|| bad("missing nvars"))? as usize;
        let mut out = Poly::zero(nvars);
        for term in value["terms"].as_array().ok_or_else(|| bad("missing terms"))? {
            let exp: Vec<u32> = term["exp"]
                .as_array()
                .ok_or_else(|| bad("missing exp"))?
                .iter()
                .map(|x| x.as_u64().map(|x| x as u32))
                .collect::<Option<_>>()
                .ok_or_else(|| bad("bad exponent"))?;
            if exp.len() != nvars {
                return Err(bad("exponent length differs from nvars"));
            }
            let coef = match &term["coef"] {
                Value::Number(n) => n.as_i64().map(BigInt::from),
                Value::String(s) => s.parse().ok(),
                _ => None,
            }
            .ok_or_else(|| bad("bad coefficient"))?;
            out.add_term(exp, coef);
        }
        Ok(out)
    }
}

fn bigint_json(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(v) => json!(v),
        None => json!(c.to_string()),
    }
}

fn check_vars(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::VarsMismatch { left, right })
    }
}

/// A symmetric polynomial in `nvars` variables, stored as coefficients of the
/// monomial symmetric polynomials `m_α`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymPoly {
    nvars: usize,
    coeffs: BTreeMap<Vec<usize>, BigInt>,
}

impl SymPoly {
    pub fn zero(nvars: usize) -> Self {
        SymPoly {
            nvars,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        SymPoly::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = SymPoly::zero(nvars);
        p.add_coeff(Vec::new(), c);
        p
    }

    /// `m_α`, or zero when `α` has more than `nvars` parts.
    pub fn monomial(nvars: usize, alpha: &[usize]) -> Self {
        let mut p = SymPoly::zero(nvars);
        let mut a: Vec<usize> = alpha.iter().copied().filter(|&x| x > 0).collect();
        a.sort_unstable_by(|x, y| y.cmp(x));
        if a.len() <= nvars {
            p.add_coeff(a, BigInt::one());
        }
        p
    }

    fn add_coeff(&mut self, alpha: Vec<usize>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(alpha.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&alpha);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&Vec::new()).is_some_and(|c| c.is_one())
    }

    /// Coefficients in the monomial symmetric basis.
    pub fn monomial_coeffs(&self) -> &BTreeMap<Vec<usize>, BigInt> {
        &self.coeffs
    }

    pub fn coefficient(&self, alpha: &[usize]) -> BigInt {
        self.coeffs.get(alpha).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Degrees of the homogeneous components present.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.coeffs.keys().map(|a| a.iter().sum()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn checked_add(&self, other: &SymPoly) -> Result<SymPoly> {
        check_vars(self.nvars, other.nvars)?;
        let mut out = self.clone();
        for (a, c) in &other.coeffs {
            out.add_coeff(a.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &SymPoly) -> Result<SymPoly> {
        self.checked_add(&other.neg_ref())
    }

    fn neg_ref(&self) -> SymPoly {
        SymPoly {
            nvars: self.nvars,
            coeffs: self.coeffs.iter().map(|(a, c)| (a.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> SymPoly {
        let mut out = SymPoly::zero(self.nvars);
        for (a, c) in &self.coeffs {
            out.add_coeff(a.clone(), c * k);
        }
        out
    }

    /// The product; the coefficient of `m_α` is the sum over `β + γ = α` of
    /// `f[sort β] · g[sort γ]`.
    pub fn checked_mul(&self, other: &SymPoly) -> Result<SymPoly> {
        check_vars(self.nvars, other.nvars)?;
        let n = self.nvars;
        let mut out = SymPoly::zero(n);
        if self.is_zero() || other.is_zero() {
            return Ok(out);
        }
        if self.is_one() {
            return Ok(other.clone());
        }
        if other.is_one() {
            return Ok(self.clone());
        }
        let mut targets = Vec::new();
        for d1 in self.degrees() {
            for d2 in other.degrees() {
                targets.push(d1 + d2);
            }
        }
        targets.sort_unstable();
        targets.dedup();
        for total in targets {
            for alpha in partitions_of(total, n) {
                let mut padded = alpha.clone();
                padded.resize(n, 0);
                let c = convolve(&padded, &self.coeffs, &other.coeffs);
                out.add_coeff(alpha, c);
            }
        }
        Ok(out)
    }

    /// Expands into every monomial.
    pub fn to_poly(&self) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (alpha, c) in &self.coeffs {
            let mut exp: Vec<u32> = alpha.iter().map(|&x| x as u32).collect();
            exp.resize(self.nvars, 0);
            exp.sort_unstable();
            loop {
                out.terms.insert(exp.clone(), c.clone());
                if !next_permutation(&mut exp) {
                    break;
                }
            }
        }
        out
    }

    /// Collects a symmetric polynomial; fails if `p` is not symmetric.
    pub fn from_poly(p: &Poly) -> Result<SymPoly> {
        let mut out = SymPoly::zero(p.nvars);
        for (e, c) in &p.terms {
            if e.windows(2).all(|w| w[0] >= w[1]) {
                let alpha = e.iter().filter(|&&x| x > 0).map(|&x| x as usize).collect();
                out.add_coeff(alpha, c.clone());
            }
        }
        if out.to_poly() != *p {
            return Err(Error::NotSymmetric);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        self.to_poly().to_json()
    }
}

fn convolve(alpha: &[usize], f: &BTreeMap<Vec<usize>, BigInt>, g: &BTreeMap<Vec<usize>, BigInt>) -> BigInt {
    let n = alpha.len();
    let mut beta = vec![0usize; n];
    let mut total = BigInt::zero();
    let sorted_key = |v: &[usize]| {
        let mut k: Vec<usize> = v.iter().copied().filter(|&x| x > 0).collect();
        k.sort_unstable_by(|a, b| b.cmp(a));
        k
    };
    loop {
        if let Some(fc) = f.get(&sorted_key(&beta)) {
            let gamma: Vec<usize> = alpha.iter().zip(&beta).map(|(a, b)| a - b).collect();
            if let Some(gc) = g.get(&sorted_key(&gamma)) {
                total += fc * gc;
            }
        }
        // odometer over 0 <= beta <= alpha
        let mut k = 0;
        loop {
            if k == n {
                return total;
            }
            if beta[k] < alpha[k] {
                beta[k] += 1;
                break;
            }
            beta[k] = 0;
            k += 1;
        }
    }
}

fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl fmt::Display for SymPoly {
    /// `3*m[2,1] - m[1,1,1]`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (alpha, c) in self.coeffs.iter().rev() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            if alpha.is_empty() {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            let parts: Vec<String> = alpha.iter().map(|x| x.to_string()).collect();
            write!(f, "m[{}]", parts.join(","))?;
        }
        Ok(())
    }
}

impl Add for &SymPoly {
    type Output = SymPoly;
    fn add(self, rhs: &SymPoly) -> SymPoly {
        self.checked_add(rhs).expect("operands share nvars")
    }
}

impl Sub for &SymPoly {
    type Output = SymPoly;
    fn sub(self, rhs: &SymPoly) -> SymPoly {
        self.checked_sub(rhs).expect("operands share nvars")
    }
}

impl Mul for &SymPoly {
    type Output = SymPoly;
    fn mul(self, rhs: &SymPoly) -> SymPoly {
        self.checked_mul(rhs).expect("operands share nvars")
    }
}

impl Neg for &SymPoly {
    type Output = SymPoly;
    fn neg(self) -> SymPoly {
        self.neg_ref()
    }
}

impl Neg for SymPoly {
    type Output = SymPoly;
    fn neg(self) -> SymPoly {
        self.neg_ref()
    }
}

/// Number of semistandard tableaux of shape `shape` with content `alpha`,
/// counted as chains of horizontal strips.
fn skew_kostka(shape: &SkewShape, alpha: &[usize], memo: &mut HashMap<(usize, Vec<usize>), BigInt>) -> BigInt {
    fn go(
        outer: &[usize],
        current: Vec<usize>,
        alpha: &[usize],
        step: usize,
        memo: &mut HashMap<(usize, Vec<usize>), BigInt>,
    ) -> BigInt {
        if step == alpha.len() {
            return if current == outer { BigInt::one() } else { BigInt::zero() };
        }
        if let Some(v) = memo.get(&(step, current.clone())) {
            return v.clone();
        }
        let mut total = BigInt::zero();
        // a horizontal strip of size alpha[step]: row r grows to at most
        // min(outer[r], current[r-1])
        fn strips(
            outer: &[usize],
            current: &[usize],
            r: usize,
            left: usize,
            next: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if r == outer.len() {
                if left == 0 {
                    out.push(next.clone());
                }
                return;
            }
            let cap = if r == 0 { outer[0] } else { outer[r].min(current[r - 1]) };
            let room = cap.saturating_sub(current[r]);
            for add in 0..=room.min(left) {
                next.push(current[r] + add);
                strips(outer, current, r + 1, left - add, next, out);
                next.pop();
            }
        }
        let mut candidates = Vec::new();
        strips(outer, &current, 0, alpha[step], &mut Vec::new(), &mut candidates);
        for next in candidates {
            total += go(outer, next, alpha, step + 1, memo);
        }
        memo.insert((step, current), total.clone());
        total
    }
    memo.clear();
    let outer: Vec<usize> = shape.outer().parts().to_vec();
    let current: Vec<usize> = (1..=outer.len()).map(|i| shape.inner().part(i)).collect();
    go(&outer, current, alpha, 0, memo)
}

/// `s_{λ/μ}` in `nvars` variables: the content generating function of the
/// semistandard tableaux of the shape with entries at most `nvars`.
pub fn schur_poly(shape: &SkewShape, nvars: usize) -> SymPoly {
    let mut out = SymPoly::zero(nvars);
    let mut memo = HashMap::new();
    for alpha in partitions_of(shape.len(), nvars) {
        let c = skew_kostka(shape, &alpha, &mut memo);
        out.add_coeff(alpha, c);
    }
    out
}

/// `s_{λ/μ}` expanded by listing every semistandard tableau box by box.
pub fn schur_expansion(shape: &SkewShape, nvars: usize) -> Poly {
    let boxes: Vec<(usize, usize)> = shape.boxes().iter().map(|b| (b.row, b.col)).collect();
    let index: HashMap<(usize, usize), usize> = boxes.iter().enumerate().map(|(k, &b)| (b, k)).collect();
    let mut out = Poly::zero(nvars);
    let mut fill = vec![0u32; boxes.len()];
    fn go(
        k: usize,
        boxes: &[(usize, usize)],
        index: &HashMap<(usize, usize), usize>,
        nvars: u32,
        fill: &mut Vec<u32>,
        out: &mut Poly,
    ) {
        if k == boxes.len() {
            let mut exp = vec![0u32; nvars as usize];
            for &v in fill.iter() {
                exp[v as usize - 1] += 1;
            }
            out.add_term(exp, BigInt::one());
            return;
        }
        let (r, c) = boxes[k];
        let mut lo = 1;
        if c > 1 {
            if let Some(&left) = index.get(&(r, c - 1)) {
                lo = lo.max(fill[left]);
            }
        }
        if r > 1 {
            if let Some(&up) = index.get(&(r - 1, c)) {
                lo = lo.max(fill[up] + 1);
            }
        }
        for v in lo..=nvars {
            fill[k] = v;
            go(k + 1, boxes, index, nvars, fill, out);
        }
        fill[k] = 0;
    }
    go(0, &boxes, &index, nvars as u32, &mut fill, &mut out);
    if boxes.is_empty() {
        return Poly {
            nvars,
            terms: BTreeMap::from([(vec![0; nvars], BigInt::one())]),
        };
    }
    out
}

/// `h_k`; `1` for `k = 0`, `0` for `k < 0`.
pub fn complete_h(k: i64, nvars: usize) -> SymPoly {
    let mut out = SymPoly::zero(nvars);
    if k < 0 {
        return out;
    }
    for alpha in partitions_of(k as usize, nvars) {
        out.add_coeff(alpha, BigInt::one());
    }
    out
}

/// `e_k`; `1` for `k = 0`, `0` for `k < 0` or `k > nvars`.
pub fn elementary_e(k: i64, nvars: usize) -> SymPoly {
    if k < 0 || k as usize > nvars {
        return SymPoly::zero(nvars);
    }
    SymPoly::monomial(nvars, &vec![1; k as usize])
}

/// Checks `s_I s_J = s_{I▶J} + s_{I↑J}` in `nvars` variables.
pub fn check_glue_identity(i: &SkewShape, j: &SkewShape, nvars: usize) -> Result<bool> {
    if i.is_empty() || j.is_empty() {
        return Err(Error::EmptyOperand);
    }
    let degree = i.len() + j.len();
    if nvars < degree {
        return Err(Error::TooFewVars { vars: nvars, degree });
    }
    let left = &schur_poly(i, nvars) * &schur_poly(j, nvars);
    let right = &schur_poly(&glue_right(i, j)?, nvars) + &schur_poly(&glue_up(i, j)?, nvars);
    Ok(left == right)
}

/// Memoized `schur_poly` for one number of variables.
#[derive(Debug, Default)]
pub struct SchurCache {
    nvars: usize,
    cache: HashMap<SkewShape, SymPoly>,
}

impl SchurCache {
    pub fn new(nvars: usize) -> Self {
        SchurCache {
            nvars,
            cache: HashMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&mut self, shape: &SkewShape) -> SymPoly {
        if let Some(p) = self.cache.get(shape) {
            return p.clone();
        }
        let p = schur_poly(shape, self.nvars);
        self.cache.insert(shape.clone(), p.clone());
        p
    }

    /// `s_λ` for a straight shape.
    pub fn straight(&mut self, lambda: &Partition) -> SymPoly {
        self.get(&SkewShape::straight(lambda.clone()))
    }
}
