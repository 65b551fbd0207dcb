//! Procedural binary key-shaped test image.
//!
//! A ring-shaped bow above a vertical shaft with two teeth on its right
//! side, on a 596 x 368 (rows x cols) canvas. Values are exactly 0 or 1.

use crate::field::Field;

pub const KEY_ROWS: usize = 596;
pub const KEY_COLS: usize = 368;

/// Zero-based `(row, col)` on the left edge of the shaft: the pixel is on,
/// its left neighbour is off. One-based this is `(314, 150)`.
pub const KEY_EDGE_PIXEL: [usize; 2] = [313, 149];

const BOW_CENTER: (f64, f64) = (150.0, 184.0);
const BOW_OUTER: f64 = 110.0;
const BOW_INNER: f64 = 50.0;
// Inclusive (row0, row1, col0, col1) rectangles.
const SHAFT: (usize, usize, usize, usize) = (250, 540, 149, 219);
const TEETH: [(usize, usize, usize, usize); 2] = [(430, 465, 220, 290), (495, 530, 220, 310)];

fn in_rect(r: usize, c: usize, rect: (usize, usize, usize, usize)) -> bool {
    (rect.0..=rect.1).contains(&r) && (rect.2..=rect.3).contains(&c)
}

pub fn is_key(r: usize, c: usize) -> bool {
    let (dr, dc) = (r as f64 - BOW_CENTER.0, c as f64 - BOW_CENTER.1);
    let d = (dr * dr + dc * dc).sqrt();
    (BOW_INNER..=BOW_OUTER).contains(&d)
        || in_rect(r, c, SHAFT)
        || TEETH.iter().any(|&t| in_rect(r, c, t))
}

pub fn key_image() -> Field {
    Field::from_fn(vec![KEY_ROWS, KEY_COLS], vec![1.0, 1.0], |i| {
        if is_key(i[0], i[1]) {
            1.0
        } else {
            0.0
        }
    })
    .expect("static key dims are valid")
}
