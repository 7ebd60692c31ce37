//! SVG pictures of tilings and chain galleries.
//!
//! Unforced dominoes are gray, forced verticals blue, the lattice path is a
//! thick blue polyline. Output is byte-for-byte deterministic.

use std::fmt::Write as _;

use crate::chains::ChainBlock;
use crate::tiling::{Domino, Tiling};

const GRAY: &str = "#dfdfdf";
const BLUE: &str = "#bfbfff";
const PATH: &str = "#1f3fbf";
const GRID: &str = "#999999";

struct Board {
    x0: f64,
    y0: f64,
    cell: f64,
    n: usize,
}

impl Board {
    /// Canvas point for lattice point `(i, j)`.
    fn point(&self, i: usize, j: usize) -> (f64, f64) {
        (
            self.x0 + i as f64 * self.cell,
            self.y0 + (self.n - j) as f64 * self.cell,
        )
    }

    fn rect(&self, out: &mut String, c0: usize, r0: usize, c1: usize, r1: usize, fill: &str) {
        // cells c0..=c1, r0..=r1 (1-based)
        let (x, y) = self.point(c0 - 1, r1);
        let w = (c1 - c0 + 1) as f64 * self.cell;
        let h = (r1 - r0 + 1) as f64 * self.cell;
        let _ = writeln!(
            out,
            r#"<rect x="{x:.1}" y="{y:.1}" width="{w:.1}" height="{h:.1}" fill="{fill}" stroke="black" stroke-width="2"/>"#
        );
    }
}

fn draw_tiling(out: &mut String, t: &Tiling, board: &Board) {
    let (m, n) = (t.m(), t.n());
    for i in 0..=m {
        let (x, y_top) = board.point(i, n);
        let (_, y_bot) = board.point(i, 0);
        let _ = writeln!(
            out,
            r#"<line x1="{x:.1}" y1="{y_top:.1}" x2="{x:.1}" y2="{y_bot:.1}" stroke="{GRID}" stroke-width="1"/>"#
        );
    }
    for j in 0..=n {
        let (x_l, y) = board.point(0, j);
        let (x_r, _) = board.point(m, j);
        let _ = writeln!(
            out,
            r#"<line x1="{x_l:.1}" y1="{y:.1}" x2="{x_r:.1}" y2="{y:.1}" stroke="{GRID}" stroke-width="1"/>"#
        );
    }
    for d in t.dominoes() {
        match d {
            Domino::Horizontal { col, row } => board.rect(out, col - 1, row, col, row, GRAY),
            Domino::Vertical { col, row } => board.rect(out, col, row - 1, col, row, GRAY),
            Domino::Forced { col, row } => board.rect(out, col, row - 1, col, row, BLUE),
        }
    }
    // lattice path from (0,0): up to h_i then right across column i
    let mut pts = vec![board.point(0, 0)];
    for (i, &h) in t.heights().iter().enumerate() {
        pts.push(board.point(i, h));
        pts.push(board.point(i + 1, h));
    }
    pts.push(board.point(m, n));
    let list: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.1},{y:.1}")).collect();
    let _ = writeln!(
        out,
        r#"<polyline points="{}" fill="none" stroke="{PATH}" stroke-width="3"/>"#,
        list.join(" ")
    );
}

/// One tiling with a `q^d` degree label underneath.
pub fn render_tiling(t: &Tiling) -> String {
    let cell = 40.0;
    let margin = 20.0;
    let width = t.m() as f64 * cell + 2.0 * margin;
    let height = t.n() as f64 * cell + 2.0 * margin + 24.0;
    let board = Board {
        x0: margin,
        y0: margin,
        cell,
        n: t.n(),
    };
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    draw_tiling(&mut out, t, &board);
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" font-family="serif" font-size="16" text-anchor="middle">q^{}</text>"#,
        width / 2.0,
        height - 10.0,
        t.weight_degree()
    );
    out.push_str("</svg>\n");
    out
}

/// One row per block, tilings from maximal (left) to minimal (right).
pub fn render_chains(blocks: &[ChainBlock]) -> String {
    let cell = 16.0;
    let gap = 28.0;
    let margin = 16.0;
    let (m, n) = blocks
        .first()
        .map(|b| (b.maximal().m(), b.maximal().n()))
        .unwrap_or((0, 0));
    let board_w = m as f64 * cell;
    let row_h = n as f64 * cell + 30.0;
    let longest = blocks.iter().map(ChainBlock::len).max().unwrap_or(0);
    let width = 2.0 * margin + longest as f64 * (board_w + gap);
    let height = 2.0 * margin + blocks.len() as f64 * row_h;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (bi, block) in blocks.iter().enumerate() {
        let y0 = margin + bi as f64 * row_h;
        let _ = writeln!(out, r#"<g class="chain" data-size="{}">"#, block.len());
        for (ti, t) in block.tilings.iter().enumerate() {
            let x0 = margin + ti as f64 * (board_w + gap);
            let board = Board { x0, y0, cell, n };
            draw_tiling(&mut out, t, &board);
            let _ = writeln!(
                out,
                r#"<text x="{:.1}" y="{:.1}" font-family="serif" font-size="11" text-anchor="middle">q^{}</text>"#,
                x0 + board_w / 2.0,
                y0 + n as f64 * cell + 14.0,
                t.weight_degree()
            );
            if ti + 1 < block.len() {
                let _ = writeln!(
                    out,
                    r#"<text x="{:.1}" y="{:.1}" font-family="serif" font-size="14" text-anchor="middle">&#8614;</text>"#,
                    x0 + board_w + gap / 2.0,
                    y0 + n as f64 * cell / 2.0 + 5.0
                );
            }
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::decompose;
    use crate::tiling::{weight25_tiling, Tiling, DEFAULT_ENUMERATION_CAP};

    #[test]
    fn weight25_svg() {
        let svg = render_tiling(&weight25_tiling());
        assert!(svg.contains(">q^25</text>"));
        assert_eq!(svg.matches(BLUE).count(), 2);
        assert_eq!(svg.matches(GRAY).count(), 2);
        assert_eq!(svg, render_tiling(&weight25_tiling()));
    }

    #[test]
    fn empty_board_svg() {
        let svg = render_tiling(&Tiling::empty(2, 0));
        assert!(svg.contains(">q^0</text>"));
        assert!(!svg.contains(BLUE) && !svg.contains(GRAY));
    }

    #[test]
    fn chain_gallery_rows() {
        let blocks = decompose(3, DEFAULT_ENUMERATION_CAP).unwrap();
        let svg = render_chains(&blocks);
        assert_eq!(svg.matches(r#"<g class="chain""#).count(), 3);
        assert_eq!(svg.matches("<polyline").count(), 15);
    }
}
