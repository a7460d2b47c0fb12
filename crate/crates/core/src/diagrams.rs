//! Satake diagrams, painted Dynkin diagrams, and the white-vertex count that
//! gives the second Betti number of the associated flag manifold.
//!
//! Nodes are numbered from 1 in the Bourbaki order of the simple roots built
//! by [`crate::rootsys`]. Adjacency is implied by family and rank.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::rootsys::Family;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Paint {
    White,
    Black,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatakeDiagram {
    pub family: Family,
    pub rank: usize,
    pub painting: Vec<Paint>,
    /// Unordered pairs of 1-based white node indices, stored with `i < j`.
    pub arrows: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaintedDynkin {
    pub family: Family,
    pub rank: usize,
    pub painting: Vec<Paint>,
}

impl SatakeDiagram {
    pub fn new(
        family: Family,
        rank: usize,
        painting: Vec<Paint>,
        arrows: Vec<(usize, usize)>,
    ) -> Result<Self> {
        if painting.len() != rank {
            return Err(Error::InvalidArgument(format!(
                "painting has {} nodes, rank is {rank}",
                painting.len()
            )));
        }
        let mut norm = Vec::with_capacity(arrows.len());
        for (i, j) in arrows {
            let ok = |k: usize| k >= 1 && k <= rank && painting[k - 1] == Paint::White;
            if i == j || !ok(i) || !ok(j) {
                return Err(Error::InvalidArgument(format!(
                    "arrow {i}<->{j} must join two distinct white nodes"
                )));
            }
            norm.push((i.min(j), i.max(j)));
        }
        norm.sort_unstable();
        norm.dedup();
        Ok(SatakeDiagram {
            family,
            rank,
            painting,
            arrows: norm,
        })
    }

    /// Diagram with the given 1-based nodes white and the rest black.
    pub fn with_white(
        family: Family,
        rank: usize,
        white: &[usize],
        arrows: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let mut painting = vec![Paint::Black; rank];
        for &w in white {
            if w == 0 || w > rank {
                return Err(Error::InvalidArgument(format!(
                    "node {w} outside 1..={rank}"
                )));
            }
            painting[w - 1] = Paint::White;
        }
        SatakeDiagram::new(family, rank, painting, arrows)
    }

    pub fn white_nodes(&self) -> Vec<usize> {
        white_nodes(&self.painting)
    }

    /// Number of white nodes modulo arrows, i.e. the real rank of the
    /// noncompact dual.
    pub fn white_orbits(&self) -> usize {
        self.white_nodes().len() - self.arrows.len()
    }

    pub fn render(&self) -> String {
        let mut s = render_nodes(self.family, self.rank, &self.painting);
        if !self.arrows.is_empty() {
            let list: Vec<String> = self
                .arrows
                .iter()
                .map(|(i, j)| format!("{i}<->{j}"))
                .collect();
            let _ = writeln!(s, "arrows: {}", list.join(", "));
        }
        s
    }
}

impl PaintedDynkin {
    pub fn white_nodes(&self) -> Vec<usize> {
        white_nodes(&self.painting)
    }

    pub fn render(&self) -> String {
        render_nodes(self.family, self.rank, &self.painting)
    }
}

fn white_nodes(painting: &[Paint]) -> Vec<usize> {
    painting
        .iter()
        .enumerate()
        .filter(|(_, p)| **p == Paint::White)
        .map(|(i, _)| i + 1)
        .collect()
}

/// Deletes the arrows; the painting is kept as is.
pub fn satake_to_painted(sd: &SatakeDiagram) -> PaintedDynkin {
    PaintedDynkin {
        family: sd.family,
        rank: sd.rank,
        painting: sd.painting.clone(),
    }
}

/// Number of white vertices.
pub fn second_betti(sd: &SatakeDiagram) -> usize {
    sd.white_nodes().len()
}

/// Satake diagram of SU(p+q)/S(U(p) x U(q)): type A_{p+q-1}, nodes 1..p and
/// q..p+q-1 white, arrows i <-> p+q-i.
///
/// For p = q all 2p-1 nodes are white and the middle node has no partner.
pub fn grassmannian_satake(p: usize, q: usize) -> Result<SatakeDiagram> {
    if p == 0 || p > q {
        return Err(Error::InvalidArgument(format!(
            "grassmannian needs 1 <= p <= q, got p={p}, q={q}"
        )));
    }
    let rank = p + q - 1;
    let white: Vec<usize> = (1..=rank).filter(|&i| i <= p || i >= q).collect();
    let arrows = (1..=p)
        .filter(|&i| i != p + q - i)
        .map(|i| (i, p + q - i))
        .collect();
    SatakeDiagram::with_white(Family::A, rank, &white, arrows)
}

fn glyph(p: Paint) -> char {
    match p {
        Paint::White => 'o',
        Paint::Black => '*',
    }
}

/// Bond drawn between nodes i and i+1 (1-based) on the main line.
fn bond(family: Family, rank: usize, i: usize) -> &'static str {
    let last = i + 1 == rank;
    match family {
        Family::B | Family::BC if last => "==>",
        Family::C if last => "<==",
        Family::F4 if i == 2 => "==>",
        _ => "---",
    }
}

fn render_nodes(family: Family, rank: usize, painting: &[Paint]) -> String {
    let mut out = String::new();
    let label = format!("{}{}: ", family.label(), rank);
    let main = match family {
        Family::D => rank.saturating_sub(1),
        _ => rank,
    };
    let mut line = label.clone();
    let mut numbers = " ".repeat(label.len());
    for i in 1..=main {
        line.push(glyph(painting[i - 1]));
        let _ = write!(numbers, "{:<4}", i);
        if i < main {
            if family == Family::D && rank == 2 {
                line.push_str("   ");
            } else {
                line.push_str(bond(family, rank, i));
            }
        }
    }
    let _ = writeln!(out, "{}", line.trim_end());
    let _ = writeln!(out, "{}", numbers.trim_end());
    if family == Family::D {
        // the last node hangs below node rank-2 (or stands alone for D2)
        let anchor = if rank == 2 { 1 } else { rank - 2 };
        let col = label.len() + 4 * (anchor - 1);
        if rank > 2 {
            let _ = writeln!(out, "{}|", " ".repeat(col));
        }
        let _ = writeln!(out, "{}{} {}", " ".repeat(col), glyph(painting[rank - 1]), rank);
    }
    out
}
