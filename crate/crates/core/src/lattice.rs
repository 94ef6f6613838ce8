//! Torus geometry.
//!
//! Vertices are linearized row-major, `index = y * side_x + x`. Every vertex
//! owns the two undirected edges leaving it in the `+x` and `+y` directions,
//! so edge `2 * index + 0` is the `+x` edge and `2 * index + 1` the `+y` edge.
//! That gives exactly `2N` edges, each listed once.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coin slot. The four cardinal directions occupy slots 0..4 and the
/// self-loop occupies slot 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    PlusX = 0,
    MinusX = 1,
    PlusY = 2,
    MinusY = 3,
    Loop = 4,
}

impl Direction {
    pub const ALL: [Direction; 5] =
        [Direction::PlusX, Direction::MinusX, Direction::PlusY, Direction::MinusY, Direction::Loop];

    pub const CARDINAL: [Direction; 4] = [Direction::PlusX, Direction::MinusX, Direction::PlusY, Direction::MinusY];

    /// Number of coin slots, degree plus one.
    pub const COUNT: usize = 5;

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Direction> {
        Self::ALL.get(i).copied()
    }

    #[inline]
    pub fn reverse(self) -> Direction {
        match self {
            Direction::PlusX => Direction::MinusX,
            Direction::MinusX => Direction::PlusX,
            Direction::PlusY => Direction::MinusY,
            Direction::MinusY => Direction::PlusY,
            Direction::Loop => Direction::Loop,
        }
    }

    pub fn is_loop(self) -> bool {
        self == Direction::Loop
    }

    fn offset(self) -> (isize, isize) {
        match self {
            Direction::PlusX => (1, 0),
            Direction::MinusX => (-1, 0),
            Direction::PlusY => (0, 1),
            Direction::MinusY => (0, -1),
            Direction::Loop => (0, 0),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex {
    pub x: usize,
    pub y: usize,
}

impl Vertex {
    pub const fn new(x: usize, y: usize) -> Self {
        Vertex { x, y }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Undirected grid edge, stored as its owning vertex and the positive
/// direction (`PlusX` or `PlusY`) leaving it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    origin: Vertex,
    dir: Direction,
}

impl Edge {
    pub fn origin(&self) -> Vertex {
        self.origin
    }

    /// `PlusX` or `PlusY`.
    pub fn direction(&self) -> Direction {
        self.dir
    }
}

/// A `side_x × side_y` grid with periodic boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Lattice {
    side_x: usize,
    side_y: usize,
}

impl Lattice {
    /// Sides below 3 are rejected: on a side of 2 the `+` and `-` neighbors
    /// coincide and the flip-flop pairing breaks down.
    pub fn new(side_x: usize, side_y: usize) -> Result<Self> {
        if side_x < 3 || side_y < 3 {
            return Err(Error::GridTooSmall { side_x, side_y });
        }
        Ok(Lattice { side_x, side_y })
    }

    pub fn side_x(&self) -> usize {
        self.side_x
    }

    pub fn side_y(&self) -> usize {
        self.side_y
    }

    /// Vertex count `N`.
    pub fn num_vertices(&self) -> usize {
        self.side_x * self.side_y
    }

    /// Undirected non-loop edge count, always `2N`.
    pub fn num_edges(&self) -> usize {
        2 * self.num_vertices()
    }

    pub fn center(&self) -> Vertex {
        Vertex::new(self.side_x / 2, self.side_y / 2)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v.x < self.side_x && v.y < self.side_y
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, side_x: self.side_x, side_y: self.side_y })
        }
    }

    /// Wraps arbitrary integer coordinates onto the torus.
    pub fn wrap(&self, x: isize, y: isize) -> Vertex {
        Vertex::new(x.rem_euclid(self.side_x as isize) as usize, y.rem_euclid(self.side_y as isize) as usize)
    }

    #[inline]
    pub fn index(&self, v: Vertex) -> usize {
        v.y * self.side_x + v.x
    }

    #[inline]
    pub fn vertex(&self, index: usize) -> Vertex {
        Vertex::new(index % self.side_x, index / self.side_x)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.num_vertices()).map(move |i| self.vertex(i))
    }

    pub fn neighbor(&self, v: Vertex, dir: Direction) -> Result<Vertex> {
        if dir.is_loop() {
            return Err(Error::LoopHasNoNeighbor);
        }
        self.check_vertex(v)?;
        let (dx, dy) = dir.offset();
        Ok(self.wrap(v.x as isize + dx, v.y as isize + dy))
    }

    /// Index-space neighbor for the hot loops. `dir` must be cardinal.
    #[inline]
    pub(crate) fn neighbor_index(&self, index: usize, dir: Direction) -> usize {
        let (x, y) = (index % self.side_x, index / self.side_x);
        match dir {
            Direction::PlusX => y * self.side_x + if x + 1 == self.side_x { 0 } else { x + 1 },
            Direction::MinusX => y * self.side_x + if x == 0 { self.side_x - 1 } else { x - 1 },
            Direction::PlusY => (if y + 1 == self.side_y { 0 } else { y + 1 }) * self.side_x + x,
            Direction::MinusY => (if y == 0 { self.side_y - 1 } else { y - 1 }) * self.side_x + x,
            Direction::Loop => index,
        }
    }

    /// The undirected edge joining `u` and `w`, if they are adjacent.
    pub fn edge_between(&self, u: Vertex, w: Vertex) -> Result<Edge> {
        self.check_vertex(u)?;
        self.check_vertex(w)?;
        for dir in [Direction::PlusX, Direction::PlusY] {
            if self.neighbor(u, dir)? == w {
                return Ok(Edge { origin: u, dir });
            }
            if self.neighbor(w, dir)? == u {
                return Ok(Edge { origin: w, dir });
            }
        }
        Err(Error::NotAnEdge(u, w))
    }

    /// Position of `edge` in [`Lattice::edges`].
    #[inline]
    pub fn edge_index(&self, edge: Edge) -> usize {
        2 * self.index(edge.origin) + usize::from(edge.dir == Direction::PlusY)
    }

    pub fn edge_at(&self, index: usize) -> Edge {
        let dir = if index.is_multiple_of(2) { Direction::PlusX } else { Direction::PlusY };
        Edge { origin: self.vertex(index / 2), dir }
    }

    /// Both endpoints of an edge, origin first.
    pub fn endpoints(&self, edge: Edge) -> (Vertex, Vertex) {
        let (dx, dy) = edge.dir.offset();
        let o = edge.origin;
        (o, self.wrap(o.x as isize + dx, o.y as isize + dy))
    }

    /// Every undirected non-loop edge exactly once, ordered by edge index.
    pub fn edges(&self) -> Vec<Edge> {
        (0..self.num_edges()).map(|i| self.edge_at(i)).collect()
    }
}
