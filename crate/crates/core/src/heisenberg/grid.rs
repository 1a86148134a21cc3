use rayon::prelude::*;

use super::{ClosedForm, FrameCalculus, FrameIndex, HeisenbergPoint};
use crate::sum::pairwise_sum_by;
use crate::{Complex64, Error, Result};

/// Cells excluded at each face from every derivative evaluation.
pub const MARGIN: usize = 2;
/// Relative magnitude a function may keep on the outer margin and still
/// count as decayed.
pub const DECAY_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub samples: usize,
}

impl Axis {
    pub fn new(min: f64, max: f64, samples: usize) -> Result<Self> {
        if samples < 5 {
            return Err(Error::domain(format!("{samples} samples per axis; at least 5 needed")));
        }
        if !(max > min) || !min.is_finite() || !max.is_finite() {
            return Err(Error::domain(format!("invalid axis range [{min}, {max}]")));
        }
        Ok(Axis { min, max, samples })
    }

    pub fn symmetric(half_width: f64, samples: usize) -> Result<Self> {
        Self::new(-half_width, half_width, samples)
    }

    pub fn step(&self) -> f64 {
        (self.max - self.min) / (self.samples - 1) as f64
    }

    pub fn coord(&self, i: usize) -> f64 {
        self.min + i as f64 * self.step()
    }
}

/// Result of a quadrature over a grid.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct GridIntegral {
    pub value: f64,
    /// Largest magnitude on the outer margin relative to the global maximum.
    pub boundary_ratio: f64,
    pub warning: Option<String>,
}

/// Samples on a rectangular lattice in `(x¹, y¹, …, xⁿ, yⁿ, t)` where
/// `z^α = x^α + i y^α`; axis `2α` is `x^α`, `2α + 1` is `y^α`, axis `2n` is `t`.
#[derive(Clone, Debug)]
pub struct GridFunction {
    n: usize,
    axes: Vec<Axis>,
    strides: Vec<usize>,
    values: Vec<Complex64>,
}

impl GridFunction {
    pub fn new(n: usize, axes: Vec<Axis>, values: Vec<Complex64>) -> Result<Self> {
        let strides = strides_for(n, &axes)?;
        let len = strides[0] * axes[0].samples;
        if values.len() != len {
            return Err(Error::Shape(format!("expected {len} samples, got {}", values.len())));
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::NonFinite("grid samples".into()));
        }
        Ok(GridFunction {
            n,
            axes,
            strides,
            values,
        })
    }

    /// Equal axes: every `z` axis on `[−z_half, z_half]`, `t` on
    /// `[−t_half, t_half]`, `samples` nodes each.
    pub fn heisenberg_axes(n: usize, z_half: f64, t_half: f64, samples: usize) -> Result<Vec<Axis>> {
        let mut axes = vec![Axis::symmetric(z_half, samples)?; 2 * n];
        axes.push(Axis::symmetric(t_half, samples)?);
        Ok(axes)
    }

    pub fn sample<F>(n: usize, axes: Vec<Axis>, f: F) -> Result<Self>
    where
        F: Fn(&HeisenbergPoint) -> Complex64 + Sync,
    {
        let strides = strides_for(n, &axes)?;
        let len = strides[0] * axes[0].samples;
        let g = GridFunction {
            n,
            axes,
            strides,
            values: Vec::new(),
        };
        let values: Vec<Complex64> = (0..len).into_par_iter().map(|i| f(&g.point(i))).collect();
        GridFunction::new(n, g.axes, values)
    }

    /// Product `Π_k f_k(coordinate k)` from per-axis factors, without
    /// evaluating anything per node beyond the multiplications.
    pub fn separable<F: Fn(usize, f64) -> f64>(n: usize, axes: Vec<Axis>, factor: F) -> Result<Self> {
        strides_for(n, &axes)?;
        let mut values = vec![1.0f64];
        for (k, ax) in axes.iter().enumerate() {
            let f: Vec<f64> = (0..ax.samples).map(|i| factor(k, ax.coord(i))).collect();
            values = values.iter().flat_map(|&v| f.iter().map(move |&e| v * e)).collect();
        }
        GridFunction::new(n, axes, values.into_iter().map(|v| Complex64::new(v, 0.0)).collect())
    }

    pub fn from_closed_form(f: &ClosedForm, axes: Vec<Axis>) -> Result<Self> {
        Self::sample(f.n, axes, |p| f.eval(p))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Pointwise map, e.g. scaling or powers.
    pub fn map(&self, f: impl Fn(Complex64) -> Complex64 + Sync) -> Self {
        GridFunction {
            n: self.n,
            axes: self.axes.clone(),
            strides: self.strides.clone(),
            values: self.values.par_iter().map(|&v| f(v)).collect(),
        }
    }

    /// `a·self + b·other` on the same lattice.
    pub fn combine(&self, a: f64, other: &Self, b: f64) -> Result<Self> {
        if self.axes != other.axes {
            return Err(Error::Shape("grids differ".into()));
        }
        Ok(GridFunction {
            n: self.n,
            axes: self.axes.clone(),
            strides: self.strides.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(x, y)| x * a + y * b)
                .collect(),
        })
    }

    #[inline]
    fn index_on_axis(&self, lin: usize, k: usize) -> usize {
        (lin / self.strides[k]) % self.axes[k].samples
    }

    #[inline]
    fn coord(&self, lin: usize, k: usize) -> f64 {
        self.axes[k].coord(self.index_on_axis(lin, k))
    }

    pub fn point(&self, lin: usize) -> HeisenbergPoint {
        HeisenbergPoint {
            z: (0..self.n)
                .map(|a| Complex64::new(self.coord(lin, 2 * a), self.coord(lin, 2 * a + 1)))
                .collect(),
            t: self.coord(lin, 2 * self.n),
        }
    }

    /// Distance in cells from the nearest face.
    pub fn margin(&self, lin: usize) -> usize {
        (0..self.axes.len())
            .map(|k| {
                let i = self.index_on_axis(lin, k);
                i.min(self.axes[k].samples - 1 - i)
            })
            .min()
            .unwrap_or(0)
    }

    /// Linear index of the node at `p`, which must lie at least `MARGIN`
    /// cells inside the box.
    pub fn node(&self, p: &HeisenbergPoint) -> Result<usize> {
        if p.dim() != self.n {
            return Err(Error::Shape("point dimension differs from grid".into()));
        }
        let mut coords = Vec::with_capacity(2 * self.n + 1);
        for z in &p.z {
            coords.push(z.re);
            coords.push(z.im);
        }
        coords.push(p.t);
        let mut lin = 0;
        for (k, (&x, ax)) in coords.iter().zip(&self.axes).enumerate() {
            let h = ax.step();
            let s = (x - ax.min) / h;
            let i = s.round();
            if (s - i).abs() > 1e-9 {
                return Err(Error::OutOfDomain(format!(
                    "coordinate {x} on axis {k} is not a grid node"
                )));
            }
            if i < MARGIN as f64 || i > (ax.samples - 1 - MARGIN) as f64 {
                return Err(Error::OutOfDomain(format!(
                    "coordinate {x} on axis {k} is within {MARGIN} cells of the boundary"
                )));
            }
            lin += i as usize * self.strides[k];
        }
        Ok(lin)
    }

    #[inline]
    fn partial_of<F: Fn(usize) -> Complex64>(&self, g: &F, lin: usize, k: usize) -> Complex64 {
        let s = self.strides[k];
        (g(lin + s) - g(lin - s)) / (2.0 * self.axes[k].step())
    }

    /// `(η_A g)` at `lin`, for `g` given as a function of the node.
    fn frame_of<F: Fn(usize) -> Complex64>(&self, g: &F, a: FrameIndex, lin: usize) -> Complex64 {
        let tk = 2 * self.n;
        let i = Complex64::new(0.0, 1.0);
        match a {
            FrameIndex::Reeb => self.partial_of(g, lin, tk),
            FrameIndex::Holo(al) | FrameIndex::Anti(al) => {
                let (x, y) = (self.coord(lin, 2 * al), self.coord(lin, 2 * al + 1));
                let dx = self.partial_of(g, lin, 2 * al);
                let dy = self.partial_of(g, lin, 2 * al + 1);
                let dt = self.partial_of(g, lin, tk);
                if matches!(a, FrameIndex::Holo(_)) {
                    // ½(∂x − i∂y) + i z̄ ∂t
                    (dx - i * dy) * 0.5 + Complex64::new(y, x) * dt
                } else {
                    // ½(∂x + i∂y) − i z ∂t
                    (dx + i * dy) * 0.5 + Complex64::new(y, -x) * dt
                }
            }
        }
    }

    /// `η_A u` at a node with margin ≥ 1.
    pub fn frame_at(&self, a: FrameIndex, lin: usize) -> Complex64 {
        let v = |j: usize| self.values[j];
        self.frame_of(&v, a, lin)
    }

    /// `η_B η_A u` at a node with margin ≥ 2.
    pub fn second_at(&self, a: FrameIndex, b: FrameIndex, lin: usize) -> Complex64 {
        let first = |j: usize| self.frame_at(a, j);
        self.frame_of(&first, b, lin)
    }

    fn check_index(&self, a: FrameIndex) -> Result<()> {
        match a {
            FrameIndex::Holo(k) | FrameIndex::Anti(k) if k >= self.n => {
                Err(Error::domain(format!("frame index {k} out of range")))
            }
            _ => Ok(()),
        }
    }

    /// Largest magnitude among nodes closer than `MARGIN` cells to a face,
    /// relative to the global maximum.
    pub fn boundary_ratio(&self) -> f64 {
        let tk = 2 * self.n;
        let st = self.axes[tk].samples;
        let (edge, all) = (0..self.len() / st)
            .into_par_iter()
            .map(|r| {
                let base = r * st;
                let row = &self.values[base..base + st];
                let all = row.iter().map(|v| v.norm()).fold(0.0, f64::max);
                let outer = (0..tk).any(|k| {
                    let i = self.index_on_axis(base, k);
                    i < MARGIN || i + MARGIN >= self.axes[k].samples
                });
                let edge = if outer {
                    all
                } else {
                    row[..MARGIN]
                        .iter()
                        .chain(&row[st - MARGIN..])
                        .map(|v| v.norm())
                        .fold(0.0, f64::max)
                };
                (edge, all)
            })
            .reduce(|| (0.0, 0.0), |a, b| (a.0.max(b.0), a.1.max(b.1)));
        if all == 0.0 {
            0.0
        } else {
            edge / all
        }
    }

    /// Lebesgue cell volume `Π h_k`.
    pub fn cell_volume(&self) -> f64 {
        self.axes.iter().map(Axis::step).product()
    }

    /// `c_n Π h_k Σ w_i f(i)` with trapezoid weights `w_i`; `f` is evaluated on
    /// every node and the sum is pairwise, so results do not depend on the
    /// number of workers.
    pub fn quadrature<F: Fn(usize) -> f64 + Sync>(&self, f: F) -> f64 {
        let w = |i: usize| {
            let mut w = 1.0;
            for k in 0..self.axes.len() {
                let j = self.index_on_axis(i, k);
                if j == 0 || j == self.axes[k].samples - 1 {
                    w *= 0.5;
                }
            }
            w
        };
        super::volume_constant(self.n) * self.cell_volume() * pairwise_sum_by(self.len(), |i| w(i) * f(i))
    }

    /// Like [`Self::quadrature`] but only over nodes with margin ≥ `MARGIN`,
    /// where second differences are available.
    pub fn interior_quadrature<F: Fn(usize) -> f64 + Sync>(&self, f: F) -> f64 {
        super::volume_constant(self.n)
            * self.cell_volume()
            * pairwise_sum_by(self.len(), |i| if self.margin(i) >= MARGIN { f(i) } else { 0.0 })
    }

    /// `[∫ |∇_b u|², ∫ u², ∫ |u|^p]` over the interior nodes for real `u`, in
    /// one pass over rows along `t` (the contiguous axis).
    pub fn energy_integrals(&self, p: f64) -> [f64; 3] {
        let tk = 2 * self.n;
        let st = self.axes[tk].samples;
        let rows = self.len() / st;
        let ht = self.axes[tk].step();
        let integer_p = (p.fract() == 0.0).then_some(p as i32);
        let sums: Vec<[f64; 3]> = (0..rows)
            .into_par_iter()
            .map(|r| {
                let base = r * st;
                if (0..tk).any(|k| {
                    let i = self.index_on_axis(base, k);
                    i < MARGIN || i + MARGIN >= self.axes[k].samples
                }) {
                    return [0.0; 3];
                }
                let xy: Vec<(f64, f64, usize, usize, f64, f64)> = (0..self.n)
                    .map(|a| {
                        let (kx, ky) = (2 * a, 2 * a + 1);
                        (
                            self.coord(base, kx),
                            self.coord(base, ky),
                            self.strides[kx],
                            self.strides[ky],
                            self.axes[kx].step(),
                            self.axes[ky].step(),
                        )
                    })
                    .collect();
                let mut acc = [0.0; 3];
                for j in MARGIN..st - MARGIN {
                    let lin = base + j;
                    let v = |d: isize| self.values[(lin as isize + d) as usize].re;
                    let dt = (v(1) - v(-1)) / (2.0 * ht);
                    let mut grad = 0.0;
                    for &(x, y, sx, sy, hx, hy) in &xy {
                        let dx = (v(sx as isize) - v(-(sx as isize))) / (2.0 * hx);
                        let dy = (v(sy as isize) - v(-(sy as isize))) / (2.0 * hy);
                        // η_α u = ½(dx − i dy) + (y + i x) dt
                        let re = 0.5 * dx + y * dt;
                        let im = -0.5 * dy + x * dt;
                        grad += re * re + im * im;
                    }
                    let u = v(0);
                    acc[0] += 2.0 * grad;
                    acc[1] += u * u;
                    acc[2] += match integer_p {
                        Some(k) => u.abs().powi(k),
                        None => u.abs().powf(p),
                    };
                }
                acc
            })
            .collect();
        let w = super::volume_constant(self.n) * self.cell_volume();
        [0, 1, 2].map(|c| w * pairwise_sum_by(sums.len(), |r| sums[r][c]))
    }

    /// `∫ Re f θ ∧ (dθ)^n`; a warning is attached when `f` has not decayed to
    /// `DECAY_TOL` of its maximum on the outer margin.
    pub fn volume_integrate(&self) -> GridIntegral {
        let ratio = self.boundary_ratio();
        let value = self.quadrature(|i| self.values[i].re);
        let warning = (ratio > DECAY_TOL).then(|| {
            format!("integrand has not decayed at the box boundary (ratio {ratio:.3e})")
        });
        GridIntegral {
            value,
            boundary_ratio: ratio,
            warning,
        }
    }

    /// Bilinear horizontal pairing `Σ_α (η_α u)(η_ᾱ v) + (η_ᾱ u)(η_α v)` at a
    /// node with margin ≥ 1.
    pub fn horizontal_pairing_at(&self, other: &Self, lin: usize) -> Complex64 {
        (0..self.n)
            .map(|a| {
                let (h, b) = (FrameIndex::Holo(a), FrameIndex::Anti(a));
                self.frame_at(h, lin) * other.frame_at(b, lin)
                    + self.frame_at(b, lin) * other.frame_at(h, lin)
            })
            .sum()
    }

    /// `Δ_b u` at a node with margin ≥ 2, as composed first differences.
    pub fn sub_laplacian_at(&self, lin: usize) -> Complex64 {
        (0..self.n)
            .map(|a| {
                let (h, b) = (FrameIndex::Holo(a), FrameIndex::Anti(a));
                self.second_at(h, b, lin) + self.second_at(b, h, lin)
            })
            .sum()
    }

    /// `∫ u Δ_b v + ∫ ⟨∇_b u, ∇_b v⟩` over the interior nodes.
    pub fn integration_by_parts_residual(&self, other: &Self) -> Result<f64> {
        if self.axes != other.axes {
            return Err(Error::Shape("grids differ".into()));
        }
        let a = self.interior_quadrature(|i| (self.values[i] * other.sub_laplacian_at(i)).re);
        let b = self.interior_quadrature(|i| self.horizontal_pairing_at(other, i).re);
        Ok(a + b)
    }
}

fn strides_for(n: usize, axes: &[Axis]) -> Result<Vec<usize>> {
    if axes.len() != 2 * n + 1 || n == 0 {
        return Err(Error::Shape(format!("H^{n} needs {} axes", 2 * n + 1)));
    }
    for a in axes {
        Axis::new(a.min, a.max, a.samples)?;
    }
    let mut strides = vec![1usize; axes.len()];
    for k in (0..axes.len() - 1).rev() {
        strides[k] = strides[k + 1] * axes[k + 1].samples;
    }
    Ok(strides)
}

impl FrameCalculus for GridFunction {
    fn dim(&self) -> usize {
        self.n
    }

    fn frame_apply(&self, a: FrameIndex, p: &HeisenbergPoint) -> Result<Complex64> {
        self.check_index(a)?;
        Ok(self.frame_at(a, self.node(p)?))
    }

    fn covariant_second(
        &self,
        a: FrameIndex,
        b: FrameIndex,
        p: &HeisenbergPoint,
    ) -> Result<Complex64> {
        self.check_index(a)?;
        self.check_index(b)?;
        Ok(self.second_at(a, b, self.node(p)?))
    }
}
