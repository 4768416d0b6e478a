//! Bubble shapes and their equispaced-parameter boundary discretization.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::lattice_green::Point2;

/// Minimum number of boundary nodes.
pub const MIN_NODES: usize = 16;

/// Bubble cross-section, centred at `x = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Shape {
    Circle {
        radius: f64,
    },
    /// Axis-aligned ellipse with semi-axes along and normal to the plane.
    Ellipse {
        semi_x: f64,
        semi_z: f64,
    },
}

/// A bubble whose centre sits at height `standoff` above the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BubbleGeometry {
    pub shape: Shape,
    pub standoff: f64,
}

impl BubbleGeometry {
    pub fn circle(radius: f64, standoff: f64) -> Self {
        Self {
            shape: Shape::Circle { radius },
            standoff,
        }
    }

    pub fn ellipse(semi_x: f64, semi_z: f64, standoff: f64) -> Self {
        Self {
            shape: Shape::Ellipse { semi_x, semi_z },
            standoff,
        }
    }

    fn semi_axes(&self) -> (f64, f64) {
        match self.shape {
            Shape::Circle { radius } => (radius, radius),
            Shape::Ellipse { semi_x, semi_z } => (semi_x, semi_z),
        }
    }

    pub fn area(&self) -> f64 {
        let (sx, sz) = self.semi_axes();
        PI * sx * sz
    }

    /// Checks positivity, clearance above the plane, and (if given) fit inside one period.
    pub fn validate(&self, period: Option<f64>) -> Result<()> {
        let (sx, sz) = self.semi_axes();
        if !(sx > 0.0 && sz > 0.0) || !sx.is_finite() || !sz.is_finite() {
            return Err(Error::Config(format!(
                "bubble semi-axes must be > 0, got ({sx}, {sz})"
            )));
        }
        if !(self.standoff > sz) || !self.standoff.is_finite() {
            return Err(Error::Config(format!(
                "bubble must lie strictly above the plane: standoff {} <= vertical extent {sz}",
                self.standoff
            )));
        }
        if let Some(a) = period {
            if !(2.0 * sx < a) {
                return Err(Error::Config(format!(
                    "bubble width {} does not fit in the period {a}",
                    2.0 * sx
                )));
            }
        }
        Ok(())
    }

    /// Boundary nodes at `t_j = 2 pi j / n`, traversed counter-clockwise.
    pub fn discretize(&self, n: usize) -> Result<DiscreteBoundary> {
        self.validate(None)?;
        if n < MIN_NODES || n % 2 == 1 {
            return Err(Error::Config(format!(
                "node count must be even and >= {MIN_NODES}, got {n}"
            )));
        }
        let (sx, sz) = self.semi_axes();
        let h = 2.0 * PI / n as f64;
        let mut nodes = Vec::with_capacity(n);
        let mut normals = Vec::with_capacity(n);
        let mut speeds = Vec::with_capacity(n);
        let mut curvature = Vec::with_capacity(n);
        for j in 0..n {
            let t = j as f64 * h;
            let (s, c) = t.sin_cos();
            let p = Point2::new(sx * c, self.standoff + sz * s);
            let d1 = Point2::new(-sx * s, sz * c);
            let d2 = Point2::new(-sx * c, -sz * s);
            let speed = d1.norm();
            nodes.push(p);
            normals.push(Point2::new(d1.z / speed, -d1.x / speed));
            speeds.push(speed);
            curvature.push((d1.x * d2.z - d1.z * d2.x) / speed.powi(3));
        }
        let weights = speeds.iter().map(|s| s * h).collect();
        Ok(DiscreteBoundary {
            geometry: *self,
            nodes,
            normals,
            speeds,
            weights,
            curvature,
        })
    }
}

/// Quadrature nodes, outward unit normals and trapezoidal arclength weights on the bubble boundary.
#[derive(Debug, Clone)]
pub struct DiscreteBoundary {
    geometry: BubbleGeometry,
    pub nodes: Vec<Point2>,
    pub normals: Vec<Point2>,
    /// `|x'(t_j)|`.
    pub speeds: Vec<f64>,
    pub weights: Vec<f64>,
    pub curvature: Vec<f64>,
}

impl DiscreteBoundary {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn geometry(&self) -> &BubbleGeometry {
        &self.geometry
    }

    /// Exact enclosed area of the shape.
    pub fn area(&self) -> f64 {
        self.geometry.area()
    }

    pub fn perimeter(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Largest distance between consecutive nodes.
    pub fn spacing(&self) -> f64 {
        let n = self.len();
        (0..n)
            .map(|j| (self.nodes[(j + 1) % n] - self.nodes[j]).norm())
            .fold(0.0, f64::max)
    }

    /// `sum_j w_j f(x_j)`.
    pub fn integrate<T>(&self, values: &[T]) -> T
    where
        T: Copy + std::iter::Sum + std::ops::Mul<f64, Output = T>,
    {
        values.iter().zip(&self.weights).map(|(&v, &w)| v * w).sum()
    }

    /// Distance from `p` to the nearest node.
    pub fn distance_to_nodes(&self, p: Point2) -> f64 {
        self.nodes
            .iter()
            .map(|&q| (p - q).norm())
            .fold(f64::INFINITY, f64::min)
    }

    /// Whether `p` lies inside the (exact) shape.
    pub fn contains(&self, p: Point2) -> bool {
        let (sx, sz) = self.geometry.semi_axes();
        let u = p.x / sx;
        let v = (p.z - self.geometry.standoff) / sz;
        u * u + v * v < 1.0
    }
}
