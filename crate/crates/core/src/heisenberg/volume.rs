//! Density of `θ ∧ (dθ)^n` against Lebesgue measure, from a small exterior
//! algebra over polynomial coefficients.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use crate::Complex64;

/// Polynomial in the real coordinates, keyed by exponent vector.
#[derive(Clone, Debug, Default, PartialEq)]
struct Poly(BTreeMap<Vec<u32>, Complex64>);

impl Poly {
    fn constant(vars: usize, c: Complex64) -> Self {
        let mut p = Poly::default();
        p.push(vec![0; vars], c);
        p
    }

    fn var(vars: usize, k: usize, c: Complex64) -> Self {
        let mut e = vec![0; vars];
        e[k] = 1;
        let mut p = Poly::default();
        p.push(e, c);
        p
    }

    fn push(&mut self, e: Vec<u32>, c: Complex64) {
        let slot = self.0.entry(e).or_default();
        *slot += c;
        if *slot == Complex64::new(0.0, 0.0) {
            self.0.retain(|_, v| *v != Complex64::new(0.0, 0.0));
        }
    }

    fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, &c) in &other.0 {
            out.push(e.clone(), c);
        }
        out
    }

    fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::default();
        for (ea, &ca) in &self.0 {
            for (eb, &cb) in &other.0 {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.push(e, ca * cb);
            }
        }
        out
    }

    fn partial(&self, k: usize) -> Poly {
        let mut out = Poly::default();
        for (e, &c) in &self.0 {
            if e[k] > 0 {
                let mut e2 = e.clone();
                e2[k] -= 1;
                out.push(e2, c * e[k] as f64);
            }
        }
        out
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

/// Differential form: basis monomial (bitmask of `dx_k`, ascending) → coefficient.
#[derive(Clone, Debug, Default)]
struct Form {
    vars: usize,
    terms: BTreeMap<u32, Poly>,
}

fn wedge_sign(a: u32, b: u32) -> f64 {
    // count pairs i ∈ a, j ∈ b with i > j
    let mut swaps = 0;
    for j in 0..32 {
        if b & (1 << j) != 0 {
            swaps += (a >> (j + 1)).count_ones();
        }
    }
    if swaps % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

impl Form {
    fn basis(vars: usize, k: usize, c: Complex64) -> Form {
        let mut f = Form {
            vars,
            terms: BTreeMap::new(),
        };
        f.terms.insert(1 << k, Poly::constant(vars, c));
        f
    }

    fn add_term(&mut self, mask: u32, p: Poly) {
        let slot = self.terms.entry(mask).or_default();
        *slot = slot.add(&p);
        if slot.is_zero() {
            self.terms.remove(&mask);
        }
    }

    fn add(&self, other: &Form) -> Form {
        let mut out = self.clone();
        for (&m, p) in &other.terms {
            out.add_term(m, p.clone());
        }
        out
    }

    fn times(&self, p: &Poly) -> Form {
        let mut out = Form {
            vars: self.vars,
            terms: BTreeMap::new(),
        };
        for (&m, q) in &self.terms {
            out.add_term(m, q.mul(p));
        }
        out
    }

    fn wedge(&self, other: &Form) -> Form {
        let mut out = Form {
            vars: self.vars,
            terms: BTreeMap::new(),
        };
        for (&a, p) in &self.terms {
            for (&b, q) in &other.terms {
                if a & b == 0 {
                    let s = wedge_sign(a, b);
                    let pq = p.mul(q).mul(&Poly::constant(self.vars, Complex64::new(s, 0.0)));
                    out.add_term(a | b, pq);
                }
            }
        }
        out
    }

    fn d(&self) -> Form {
        let mut out = Form {
            vars: self.vars,
            terms: BTreeMap::new(),
        };
        for (&m, p) in &self.terms {
            for k in 0..self.vars {
                if m & (1 << k) == 0 {
                    let dp = p.partial(k);
                    if !dp.is_zero() {
                        let s = wedge_sign(1 << k, m);
                        out.add_term(m | (1 << k), dp.mul(&Poly::constant(self.vars, Complex64::new(s, 0.0))));
                    }
                }
            }
        }
        out
    }
}

/// Coefficient of `θ ∧ (dθ)^n` on `dt ∧ dx¹ ∧ dy¹ ∧ … ∧ dxⁿ ∧ dyⁿ`, with
/// `θ = dt + i Σ (z dz̄ − z̄ dz)` and `dθ` obtained by differentiating `θ`.
fn expand(n: usize) -> f64 {
    let vars = 2 * n + 1;
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let mut theta = Form::basis(vars, 2 * n, one);
    for a in 0..n {
        let (x, y) = (2 * a, 2 * a + 1);
        let z = Poly::var(vars, x, one).add(&Poly::var(vars, y, i));
        let zbar = Poly::var(vars, x, one).add(&Poly::var(vars, y, -i));
        let dz = Form::basis(vars, x, one).add(&Form::basis(vars, y, i));
        let dzbar = Form::basis(vars, x, one).add(&Form::basis(vars, y, -i));
        let term = dzbar.times(&z).add(&dz.times(&zbar).times(&Poly::constant(vars, -one)));
        theta = theta.add(&term.times(&Poly::constant(vars, i)));
    }
    let dtheta = theta.d();
    let mut vol = theta;
    for _ in 0..n {
        vol = vol.wedge(&dtheta);
    }
    let top = (1u32 << vars) - 1;
    let coeff = vol.terms.get(&top).cloned().unwrap_or_default();
    // The density is constant: only the constant monomial may survive.
    let mut value = Complex64::new(0.0, 0.0);
    for (e, c) in &coeff.0 {
        assert!(e.iter().all(|&k| k == 0), "volume density is not constant");
        value += c;
    }
    assert!(value.im == 0.0, "volume density is not real");
    // dt is the last basis element; moving it to the front past 2n one-forms is even.
    value.re
}

/// `c_n` with `θ ∧ (dθ)^n = c_n dt ∧ dx¹ ∧ dy¹ ∧ … ∧ dxⁿ ∧ dyⁿ`.
pub fn volume_constant(n: usize) -> f64 {
    static CACHE: OnceLock<Mutex<HashMap<usize, f64>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(&c) = cache.lock().unwrap().get(&n) {
        return c;
    }
    let c = expand(n);
    cache.lock().unwrap().insert(n, c);
    c
}
