//! Dendrogram drawings with leaves placed along a line in a given order.
//!
//! Leaf `x` is its rank. A merge node draws a horizontal bar at its height
//! spanning its children's `x` positions and sits at the bar's midpoint;
//! each child connects to the bar with a vertical stem. Every block of the
//! dendrogram occupies a contiguous run of ranks exactly when the order is
//! admissible, and then no stem crosses a bar.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::dendrogram::Dendrogram;
use crate::rational::Rational;

/// Horizontal spacing between leaves in SVG output, in pixels.
const LEAF_SPACING: u64 = 40;
const PLOT_HEIGHT: u64 = 200;
const MARGIN: u64 = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("order names `{0}`, which is not a leaf")]
    UnknownLeaf(String),
    #[error("order does not place leaf `{0}`")]
    MissingLeaf(String),
    #[error("order places `{0}` twice")]
    DuplicateLeaf(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Svg,
    Ascii,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bar {
    pub height: Rational,
    pub x_min: Rational,
    pub x_max: Rational,
}

/// Vertical connector from a node at `bottom` up to its parent's bar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stem {
    pub x: Rational,
    pub bottom: Rational,
    pub top: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    /// Leaf labels by rank.
    pub leaves: Vec<String>,
    pub bars: Vec<Bar>,
    pub stems: Vec<Stem>,
    /// (block, intruding leaf) pairs: leaves ranked strictly inside the
    /// span of a block they do not belong to.
    pub intrusions: usize,
    root_height: Rational,
}

impl Layout {
    pub fn new<S: AsRef<str>>(dendro: &Dendrogram, order: &[S]) -> Result<Self, RenderError> {
        let leaves = dendro.leaves();
        let mut rank: HashMap<&str, usize> = HashMap::with_capacity(order.len());
        for (r, label) in order.iter().enumerate() {
            let label = label.as_ref();
            let Some(&leaf) = leaves.iter().find(|&&l| l == label) else {
                return Err(RenderError::UnknownLeaf(label.to_string()));
            };
            if rank.insert(leaf, r).is_some() {
                return Err(RenderError::DuplicateLeaf(label.to_string()));
            }
        }
        if let Some(missing) = leaves.iter().find(|l| !rank.contains_key(*l)) {
            return Err(RenderError::MissingLeaf(missing.to_string()));
        }

        let mut layout = Layout {
            leaves: order.iter().map(|l| l.as_ref().to_string()).collect(),
            bars: Vec::new(),
            stems: Vec::new(),
            intrusions: 0,
            root_height: dendro.height(),
        };
        layout.place(dendro, &rank);

        for (_, members) in dendro.clusters() {
            let ranks: Vec<usize> = members.iter().map(|m| rank[m]).collect();
            let lo = *ranks.iter().min().unwrap();
            let hi = *ranks.iter().max().unwrap();
            layout.intrusions += (hi - lo + 1) - ranks.len();
        }
        Ok(layout)
    }

    /// Returns the node's x position.
    fn place(&mut self, d: &Dendrogram, rank: &HashMap<&str, usize>) -> Rational {
        match d {
            Dendrogram::Leaf(l) => Rational::from_integer(rank[l.as_str()] as u64),
            Dendrogram::Merge { height, children } => {
                let xs: Vec<(Rational, Rational)> =
                    children.iter().map(|c| (self.place(c, rank), c.height())).collect();
                let x_min = xs.iter().map(|(x, _)| x).min().unwrap().clone();
                let x_max = xs.iter().map(|(x, _)| x).max().unwrap().clone();
                for (x, bottom) in xs {
                    self.stems.push(Stem {
                        x,
                        bottom,
                        top: height.clone(),
                    });
                }
                let mid = x_min.midpoint(&x_max);
                self.bars.push(Bar {
                    height: height.clone(),
                    x_min,
                    x_max,
                });
                mid
            }
        }
    }

    /// Geometric crossings: a stem passing through the interior of a bar,
    /// or two bars at the same height overlapping.
    pub fn crossings(&self) -> usize {
        let mut count = 0;
        for bar in &self.bars {
            for stem in &self.stems {
                if bar.x_min < stem.x && stem.x < bar.x_max && stem.bottom < bar.height && bar.height < stem.top {
                    count += 1;
                }
            }
        }
        for (i, a) in self.bars.iter().enumerate() {
            for b in &self.bars[i + 1..] {
                if a.height == b.height && a.x_min <= b.x_max && b.x_min <= a.x_max {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn to_svg(&self) -> String {
        let n = self.leaves.len() as u64;
        let width = LEAF_SPACING * n + 2 * MARGIN;
        let baseline = Rational::from_integer(MARGIN + PLOT_HEIGHT);
        let total_height = MARGIN + PLOT_HEIGHT + 2 * MARGIN;
        let px_x =
            |x: &Rational| (&(x * LEAF_SPACING) + &Rational::from_integer(MARGIN + LEAF_SPACING / 2)).to_fixed(2);
        let scale = if self.root_height.is_zero() {
            Rational::zero()
        } else {
            &Rational::from_integer(PLOT_HEIGHT) / &self.root_height
        };
        // y grows downward; the baseline is height 0
        let px_y = |h: &Rational| {
            baseline
                .checked_sub(&(h * &scale))
                .expect("heights are at most the root height")
                .to_fixed(2)
        };

        let mut out = String::new();
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(out, "<!-- crossings: {} -->", self.intrusions);
        let _ = writeln!(
            out,
            "<!-- leaf spacing: {LEAF_SPACING}px; height scale: {scale} px per unit -->"
        );
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{total_height}\" viewBox=\"0 0 {width} {total_height}\">"
        );
        out.push_str("<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n");
        if self.bars.is_empty() {
            let x = px_x(&Rational::zero());
            let _ = writeln!(
                out,
                "<line x1=\"{x}\" y1=\"{}\" x2=\"{x}\" y2=\"{}\"/>",
                baseline.to_fixed(2),
                Rational::from_integer(PLOT_HEIGHT).to_fixed(2)
            );
        }
        for bar in &self.bars {
            let y = px_y(&bar.height);
            let _ = writeln!(
                out,
                "<line x1=\"{}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\"/>",
                px_x(&bar.x_min),
                px_x(&bar.x_max)
            );
        }
        for stem in &self.stems {
            let x = px_x(&stem.x);
            let _ = writeln!(
                out,
                "<line x1=\"{x}\" y1=\"{}\" x2=\"{x}\" y2=\"{}\"/>",
                px_y(&stem.bottom),
                px_y(&stem.top)
            );
        }
        out.push_str("</g>\n");
        out.push_str("<g font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\">\n");
        let label_y = MARGIN + PLOT_HEIGHT + MARGIN;
        for (r, label) in self.leaves.iter().enumerate() {
            let _ = writeln!(
                out,
                "<text x=\"{}\" y=\"{label_y}\">{}</text>",
                px_x(&Rational::from_integer(r as u64)),
                escape_xml(label)
            );
        }
        out.push_str("</g>\n</svg>\n");
        out
    }

    /// Text drawing using `|`, `-` and `+`; one row per distinct merge
    /// height (top to bottom), a row for the leaves, then the labels.
    pub fn to_ascii(&self) -> String {
        let mut levels: Vec<Rational> = self.bars.iter().map(|b| b.height.clone()).collect();
        levels.push(Rational::zero());
        levels.sort_by(|a, b| b.cmp(a));
        levels.dedup();
        let row_of = |h: &Rational| levels.iter().position(|l| l == h).unwrap();

        let spacing = self.leaves.iter().map(|l| l.chars().count()).max().unwrap_or(1).max(3) as u64 + 1;
        let col = |x: &Rational| usize::try_from((x * spacing).floor()).expect("column fits in usize");
        let width = col(&Rational::from_integer(self.leaves.len() as u64 - 1)) + 1;
        let mut grid = vec![vec![' '; width]; levels.len()];

        for bar in &self.bars {
            let row = row_of(&bar.height);
            grid[row][col(&bar.x_min)..=col(&bar.x_max)].fill('-');
        }
        for stem in &self.stems {
            let c = col(&stem.x);
            let top = row_of(&stem.top);
            let bottom = row_of(&stem.bottom);
            grid[top][c] = '+';
            for row in grid.iter_mut().take(bottom).skip(top + 1) {
                row[c] = '|';
            }
            if stem.bottom.is_zero() {
                grid[bottom][c] = '|';
            }
        }
        if self.bars.is_empty() {
            grid[0][0] = '|';
        }

        let names: Vec<String> = levels.iter().map(ToString::to_string).collect();
        let gutter = names.iter().map(String::len).max().unwrap_or(1);
        let mut out = format!("# crossings: {}\n", self.intrusions);
        for (name, row) in names.iter().zip(&grid) {
            let line: String = row.iter().collect();
            let _ = writeln!(out, "{name:>gutter$} {}", line.trim_end());
        }
        let mut label_line = vec![' '; width + spacing as usize];
        for (r, label) in self.leaves.iter().enumerate() {
            let start = col(&Rational::from_integer(r as u64));
            for (k, ch) in label.chars().enumerate() {
                if start + k >= label_line.len() {
                    label_line.resize(start + k + 1, ' ');
                }
                label_line[start + k] = ch;
            }
        }
        let labels: String = label_line.into_iter().collect();
        let _ = writeln!(out, "{:gutter$} {}", "", labels.trim_end());
        out
    }
}

fn escape_xml(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Lays out and draws a dendrogram with leaves in `order`.
pub fn render<S: AsRef<str>>(dendro: &Dendrogram, order: &[S], format: RenderFormat) -> Result<String, RenderError> {
    let layout = Layout::new(dendro, order)?;
    Ok(match format {
        RenderFormat::Svg => layout.to_svg(),
        RenderFormat::Ascii => layout.to_ascii(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dendrogram::dendrogram_of;
    use crate::space::UltrametricSpace;

    fn e1() -> Dendrogram {
        let x = UltrametricSpace::from_strs(
            &["a", "b", "c"],
            &[&["0", "1", "2"], &["1", "0", "2"], &["2", "2", "0"]],
        )
        .unwrap();
        dendrogram_of(&x)
    }

    #[test]
    fn admissible_order_draws_two_clean_bars() {
        let layout = Layout::new(&e1(), &["c", "b", "a"]).unwrap();
        let mut heights: Vec<String> = layout.bars.iter().map(|b| b.height.to_string()).collect();
        heights.sort();
        assert_eq!(heights, ["1", "2"]);
        assert_eq!(layout.intrusions, 0);
        assert_eq!(layout.crossings(), 0);
        let svg = layout.to_svg();
        assert!(svg.contains("<!-- crossings: 0 -->"));
        assert!(svg.contains("height scale: 100 px per unit"));
    }

    #[test]
    fn interleaved_order_is_flagged() {
        let svg = render(&e1(), &["a", "c", "b"], RenderFormat::Svg).unwrap();
        assert!(svg.contains("<!-- crossings: 1 -->"));
        let ascii = render(&e1(), &["a", "c", "b"], RenderFormat::Ascii).unwrap();
        assert!(ascii.starts_with("# crossings: 1\n"));
        let layout = Layout::new(&e1(), &["a", "c", "b"]).unwrap();
        assert!(layout.crossings() > 0);
    }

    #[test]
    fn ascii_drawing() {
        let ascii = render(&e1(), &["c", "b", "a"], RenderFormat::Ascii).unwrap();
        let expected = "\
# crossings: 0
2 +-----+
1 |   +---+
0 |   |   |
  c   b   a
";
        assert_eq!(ascii, expected);
    }

    #[test]
    fn single_leaf() {
        let d = Dendrogram::leaf("only");
        let svg = render(&d, &["only"], RenderFormat::Svg).unwrap();
        assert!(svg.contains("<line x1=\"40.00\" y1=\"220.00\" x2=\"40.00\" y2=\"200.00\"/>"));
        let ascii = render(&d, &["only"], RenderFormat::Ascii).unwrap();
        assert_eq!(ascii, "# crossings: 0\n0 |\n  only\n");
    }

    #[test]
    fn output_is_stable() {
        let a = render(&e1(), &["c", "b", "a"], RenderFormat::Svg).unwrap();
        let b = render(&e1(), &["c", "b", "a"], RenderFormat::Svg).unwrap();
        assert_eq!(a, b);
        assert!(a.contains("<line x1=\"40.00\" y1=\"20.00\" x2=\"100.00\" y2=\"20.00\"/>"));
    }

    #[test]
    fn order_must_be_a_permutation_of_leaves() {
        assert_eq!(
            Layout::new(&e1(), &["a", "b"]),
            Err(RenderError::MissingLeaf("c".into()))
        );
        assert_eq!(
            Layout::new(&e1(), &["a", "b", "z"]),
            Err(RenderError::UnknownLeaf("z".into()))
        );
        assert_eq!(
            Layout::new(&e1(), &["a", "a", "b"]),
            Err(RenderError::DuplicateLeaf("a".into()))
        );
    }
}
