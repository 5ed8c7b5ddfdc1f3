use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

const GKP_DET_TOL: f64 = 1e-9;
const SYMPLECTIC_TOL: f64 = 1e-9;

/// Named operator families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Topology {
    /// Logical |0⟩ on the square logical grid.
    Q0,
    /// Logical |1⟩, Q₀ with the x term shifted to a cos².
    Q1,
    /// Symmetric square grid, |0⟩.
    S0,
    /// Symmetric square grid, |1⟩.
    S1,
    /// Hexagonal (triangular) grid.
    Hex,
    /// `2 sin²(a x) + 2 sin²(b p)`.
    General { a: f64, b: f64 },
}

impl Topology {
    pub const PRESETS: [Topology; 5] = [Topology::Q0, Topology::Q1, Topology::S0, Topology::S1, Topology::Hex];

    pub fn name(&self) -> String {
        match self {
            Topology::Q0 => "q0".into(),
            Topology::Q1 => "q1".into(),
            Topology::S0 => "s0".into(),
            Topology::S1 => "s1".into(),
            Topology::Hex => "hex".into(),
            Topology::General { a, b } => format!("general:{a},{b}"),
        }
    }
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Topology {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "q0" => Ok(Topology::Q0),
            "q1" => Ok(Topology::Q1),
            "s0" => Ok(Topology::S0),
            "s1" => Ok(Topology::S1),
            "hex" | "h" => Ok(Topology::Hex),
            _ => {
                let rest = t
                    .strip_prefix("general:")
                    .or_else(|| t.strip_prefix("general(").and_then(|r| r.strip_suffix(')')))
                    .ok_or_else(|| Error::UnknownTopology(s.to_string()))?;
                let mut it = rest.split(',').map(|v| v.trim().parse::<f64>());
                match (it.next(), it.next(), it.next()) {
                    (Some(Ok(a)), Some(Ok(b)), None) => Ok(Topology::General { a, b }),
                    _ => Err(Error::UnknownTopology(s.to_string())),
                }
            }
        }
    }
}

/// Hexagonal grid constants `κ± = √(π/8)(3^{1/4} ± 3^{−1/4})`.
pub(crate) fn kappa() -> (f64, f64) {
    let s = (PI / 8.0).sqrt();
    let q = 3f64.powf(0.25);
    (s * (q + 1.0 / q), s * (q - 1.0 / q))
}

/// One `sin²` term: `2 sin²(cx x + cp p + d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRow {
    pub cx: f64,
    pub cp: f64,
    pub d: f64,
}

impl GridRow {
    /// Length `z` of the coefficient vector.
    pub fn scale(&self) -> f64 {
        self.cx.hypot(self.cp)
    }

    /// Direction `φ = atan2(cp, cx)`, so the argument is `z x(φ) + d`.
    pub fn angle(&self) -> f64 {
        self.cp.atan2(self.cx)
    }
}

/// Coefficients of `Q = 2 sin²(c₁₁x + c₁₂p + d₁) + 2 sin²(c₂₁x + c₂₂p + d₂)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub c11: f64,
    pub c12: f64,
    pub c21: f64,
    pub c22: f64,
    pub d1: f64,
    pub d2: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl GridSpec {
    pub fn new(c11: f64, c12: f64, c21: f64, c22: f64, d1: f64, d2: f64) -> Result<Self> {
        let g = Self {
            c11,
            c12,
            c21,
            c22,
            d1,
            d2,
            label: None,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.c11, self.c12, self.c21, self.c22, self.d1, self.d2];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidGrid("non-finite coefficient".into()));
        }
        if self.c11 == 0.0 && self.c12 == 0.0 {
            return Err(Error::InvalidGrid("first row (c11, c12) is zero".into()));
        }
        if self.c21 == 0.0 && self.c22 == 0.0 {
            return Err(Error::InvalidGrid("second row (c21, c22) is zero".into()));
        }
        Ok(())
    }

    pub fn det(&self) -> f64 {
        self.c11 * self.c22 - self.c12 * self.c21
    }

    /// Coefficient matrix equals `√(π/2)` times a symplectic matrix.
    pub fn gkp_valid(&self) -> bool {
        (self.det() - FRAC_PI_2).abs() < GKP_DET_TOL
    }

    pub fn rows(&self) -> [GridRow; 2] {
        [
            GridRow {
                cx: self.c11,
                cp: self.c12,
                d: self.d1,
            },
            GridRow {
                cx: self.c21,
                cp: self.c22,
                d: self.d2,
            },
        ]
    }

    /// Both rows act on a single quadrature each (`x` or `p`).
    pub fn is_axis_aligned(&self) -> bool {
        self.rows().iter().all(|r| r.cx == 0.0 || r.cp == 0.0)
    }

    pub fn name(&self) -> String {
        self.label
            .clone()
            .unwrap_or_else(|| format!("[{}, {}; {}, {}] + ({}, {})", self.c11, self.c12, self.c21, self.c22, self.d1, self.d2))
    }
}

pub fn preset_grid(topology: Topology) -> Result<GridSpec> {
    let sp = PI.sqrt();
    let ss = FRAC_PI_2.sqrt();
    let g = match topology {
        Topology::Q0 => GridSpec::new(sp / 2.0, 0.0, 0.0, sp, 0.0, 0.0)?,
        // cos²θ = sin²(θ + π/2)
        Topology::Q1 => GridSpec::new(sp / 2.0, 0.0, 0.0, sp, FRAC_PI_2, 0.0)?,
        Topology::S0 => GridSpec::new(ss, 0.0, 0.0, ss, 0.0, 0.0)?,
        Topology::S1 => GridSpec::new(ss, 0.0, 0.0, ss, FRAC_PI_2, 0.0)?,
        Topology::Hex => {
            let (kp, km) = kappa();
            GridSpec::new(kp, -km, -km, kp, 0.0, 0.0)?
        }
        Topology::General { a, b } => {
            if !(a > 0.0 && b > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "general grid needs a, b > 0 (got {a}, {b})"
                )));
            }
            GridSpec::new(a, 0.0, 0.0, b, 0.0, 0.0)?
        }
    };
    Ok(g.with_label(topology.name()))
}

/// Grid seen after the Gaussian map `ζ ↦ Aζ + α` on the quadratures:
/// `C′ = C A` and `d′ = d + C α`.
pub fn transform_grid(grid: &GridSpec, a: [[f64; 2]; 2], alpha: [f64; 2]) -> Result<GridSpec> {
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    if !det.is_finite() || (det - 1.0).abs() > SYMPLECTIC_TOL {
        return Err(Error::NotSymplectic(det));
    }
    let c = [[grid.c11, grid.c12], [grid.c21, grid.c22]];
    let mut out = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = c[i][0] * a[0][j] + c[i][1] * a[1][j];
        }
    }
    let d1 = grid.d1 + c[0][0] * alpha[0] + c[0][1] * alpha[1];
    let d2 = grid.d2 + c[1][0] * alpha[0] + c[1][1] * alpha[1];
    GridSpec::new(out[0][0], out[0][1], out[1][0], out[1][1], d1, d2)
}
