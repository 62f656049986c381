//! ASCII rendering of a labeled northeastern path: horizontal edges run
//! east, vertical edges run north, nodes are `+`, and each edge carries its
//! label (centered in the dashes for horizontal edges, right of the bar for
//! vertical ones).

use permrun_core::path::{Direction, LabeledPath};

/// The grid lines, top row first (the path starts at the bottom-left `+`).
pub fn ascii_grid(path: &LabeledPath) -> Vec<String> {
    let edges = path.edges();
    let hlabel_width = edges
        .iter()
        .filter(|e| e.direction == Direction::Horizontal)
        .map(|e| e.label.to_string().len())
        .max()
        .unwrap_or(1);
    // One node column plus dashes around the centered label per east step.
    let cell = hlabel_width + 2;

    let vlabel_width = edges
        .iter()
        .filter(|e| e.direction == Direction::Vertical)
        .map(|e| e.label.to_string().len())
        .max()
        .unwrap_or(0);

    let width: usize = edges.iter().filter(|e| e.direction == Direction::Horizontal).count();
    let height: usize = edges.len() - width;
    let rows = 2 * height + 1;
    let cols = width * (cell + 1) + 1 + vlabel_width; // room for a rightmost vertical label
    let mut grid = vec![vec![' '; cols]; rows];

    let (mut x, mut y) = (0usize, 0usize);
    let row_of = |y: usize| 2 * (height - y);
    let col_of = |x: usize| x * (cell + 1);
    grid[row_of(0)][col_of(0)] = '+';
    for edge in edges {
        match edge.direction {
            Direction::Horizontal => {
                let row = row_of(y);
                let start = col_of(x) + 1;
                for c in 0..cell {
                    grid[row][start + c] = '-';
                }
                let label = edge.label.to_string();
                let offset = (cell - label.len()) / 2;
                for (i, ch) in label.chars().enumerate() {
                    grid[row][start + offset + i] = ch;
                }
                x += 1;
            }
            Direction::Vertical => {
                let row = row_of(y) - 1;
                let col = col_of(x);
                grid[row][col] = '|';
                for (i, ch) in edge.label.to_string().chars().enumerate() {
                    grid[row][col + 1 + i] = ch;
                }
                y += 1;
            }
        }
        grid[row_of(y)][col_of(x)] = '+';
    }

    grid.into_iter()
        .map(|row| row.into_iter().collect::<String>().trim_end().to_string())
        .collect()
}
