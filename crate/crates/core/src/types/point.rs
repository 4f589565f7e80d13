use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

/// Ambient dimension of a scenario; the toolkit covers the line and the plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Dim {
    One,
    Two,
}

impl Dim {
    /// Number of coordinates.
    pub fn size(self) -> usize {
        match self {
            Dim::One => 1,
            Dim::Two => 2,
        }
    }
}

/// A point of the primal space (also used for dual points).
///
/// Coordinates are always finite; the dimension is fixed at construction and
/// mixing dimensions in arithmetic panics, mirroring the rule that a scenario
/// lives in one fixed dimension.
#[derive(Clone, Copy, PartialEq)]
pub struct Point {
    dim: Dim,
    coords: [f64; 2],
}

impl Point {
    pub fn one(x: f64) -> Point {
        assert!(x.is_finite(), "coordinate must be finite, got {x}");
        Point {
            dim: Dim::One,
            coords: [x, 0.0],
        }
    }

    pub fn two(x: f64, y: f64) -> Point {
        assert!(
            x.is_finite() && y.is_finite(),
            "coordinates must be finite, got ({x}, {y})"
        );
        Point {
            dim: Dim::Two,
            coords: [x, y],
        }
    }

    pub fn zero(dim: Dim) -> Point {
        Point { dim, coords: [0.0; 2] }
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords[..self.dim.size()]
    }

    /// Sole coordinate of a 1-d point. Panics in the plane.
    pub fn scalar(&self) -> f64 {
        assert_eq!(self.dim, Dim::One, "scalar() needs a 1-d point");
        self.coords[0]
    }

    pub fn dot(&self, other: &Point) -> f64 {
        assert_eq!(self.dim, other.dim, "mixed dimensions in dot product");
        self.coords()
            .iter()
            .zip(other.coords())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn add(&self, other: &Point) -> Point {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Point) -> Point {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, k: f64) -> Point {
        assert!(k.is_finite());
        let mut coords = self.coords;
        for c in &mut coords[..self.dim.size()] {
            *c *= k;
        }
        Point { dim: self.dim, coords }
    }

    pub fn dist(&self, other: &Point) -> f64 {
        self.sub(other).norm()
    }

    fn zip_with(&self, other: &Point, f: impl Fn(f64, f64) -> f64) -> Point {
        assert_eq!(self.dim, other.dim, "mixed dimensions in point arithmetic");
        let mut coords = [0.0; 2];
        for (i, c) in coords.iter_mut().enumerate().take(self.dim.size()) {
            *c = f(self.coords[i], other.coords[i]);
        }
        Point { dim: self.dim, coords }
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.dim {
            Dim::One => write!(f, "{}", self.coords[0]),
            Dim::Two => write!(f, "({}, {})", self.coords[0], self.coords[1]),
        }
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match self.dim {
            Dim::One => ser.serialize_f64(self.coords[0]),
            Dim::Two => {
                let mut seq = ser.serialize_seq(Some(2))?;
                seq.serialize_element(&self.coords[0])?;
                seq.serialize_element(&self.coords[1])?;
                seq.end()
            }
        }
    }
}

/// A primal/dual pair `(x, x*)` together with its coupling `<x, x*>`.
#[derive(Clone, Copy, PartialEq, Serialize)]
pub struct DualPair {
    pub x: Point,
    pub xstar: Point,
}

impl DualPair {
    pub fn new(x: Point, xstar: Point) -> DualPair {
        assert_eq!(x.dim(), xstar.dim(), "primal and dual dimensions differ");
        DualPair { x, xstar }
    }

    pub fn one(x: f64, xstar: f64) -> DualPair {
        DualPair::new(Point::one(x), Point::one(xstar))
    }

    pub fn dim(&self) -> Dim {
        self.x.dim()
    }

    /// The duality product `<x, x*>`.
    pub fn coupling(&self) -> f64 {
        self.x.dot(&self.xstar)
    }

    /// Euclidean distance in the product space.
    pub fn dist(&self, other: &DualPair) -> f64 {
        let dx = self.x.sub(&other.x);
        let ds = self.xstar.sub(&other.xstar);
        (dx.norm_sq() + ds.norm_sq()).sqrt()
    }
}

impl fmt::Debug for DualPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}; {:?})", self.x, self.xstar)
    }
}

/// Free-function form of the duality product.
pub fn coupling(p: &DualPair) -> f64 {
    p.coupling()
}
