//! Rasterised test shapes. Pixels (voxels) are occupied when their centre
//! satisfies the predicate, measured from the centre of the grid.

use crate::complex::Grid;

fn centred(idx: &[usize], size: usize) -> Vec<f64> {
    // idx is ([z,] y, x); return (x, y[, z])
    idx.iter()
        .rev()
        .map(|&i| i as f64 + 0.5 - size as f64 / 2.0)
        .collect()
}

fn radius(idx: &[usize], size: usize) -> f64 {
    centred(idx, size).iter().map(|c| c * c).sum::<f64>().sqrt()
}

pub fn annulus(size: usize, outer: f64, inner: f64) -> Grid {
    Grid::from_fn(vec![size, size], |idx| {
        let r = radius(idx, size);
        r >= inner && r <= outer
    })
    .expect("positive size")
}

pub fn disk(size: usize, outer: f64) -> Grid {
    Grid::from_fn(vec![size, size], |idx| radius(idx, size) <= outer).expect("positive size")
}

/// Disk whose centre is moved by `(dx, dy)` pixels.
pub fn shifted_disk(size: usize, outer: f64, dx: f64, dy: f64) -> Grid {
    Grid::from_fn(vec![size, size], |idx| {
        let c = centred(idx, size);
        ((c[0] - dx).powi(2) + (c[1] - dy).powi(2)).sqrt() <= outer
    })
    .expect("positive size")
}

/// Annulus with a single ring pixel removed halfway between the two radii,
/// which adds one independent 1-cycle.
pub fn annulus_with_pinhole(size: usize, outer: f64, inner: f64) -> Grid {
    let mut g = annulus(size, outer, inner);
    let mid = (outer + inner) / 2.0;
    let col = (size as f64 / 2.0 + mid).floor() as usize;
    let row = size / 2;
    g.set(&[row, col], false);
    g
}

pub fn ball(size: usize, outer: f64) -> Grid {
    Grid::from_fn(vec![size, size, size], |idx| radius(idx, size) <= outer).expect("positive size")
}

pub fn shell(size: usize, outer: f64, inner: f64) -> Grid {
    Grid::from_fn(vec![size, size, size], |idx| {
        let r = radius(idx, size);
        r >= inner && r <= outer
    })
    .expect("positive size")
}

/// The fixed shapes used by the demos and the acceptance suite.
pub mod fixtures {
    use super::*;

    pub const ANNULUS_SIZE: usize = 64;
    pub const ANNULUS_OUTER: f64 = 24.0;
    pub const ANNULUS_INNER: f64 = 10.0;
    pub const VOLUME_SIZE: usize = 32;
    pub const BALL_RADIUS: f64 = 14.0;
    pub const SHELL_INNER: f64 = 10.0;

    pub fn annulus() -> Grid {
        super::annulus(ANNULUS_SIZE, ANNULUS_OUTER, ANNULUS_INNER)
    }

    pub fn pinholed_annulus() -> Grid {
        super::annulus_with_pinhole(ANNULUS_SIZE, ANNULUS_OUTER, ANNULUS_INNER)
    }

    pub fn disk() -> Grid {
        super::disk(ANNULUS_SIZE, ANNULUS_OUTER)
    }

    pub fn ball() -> Grid {
        super::ball(VOLUME_SIZE, BALL_RADIUS)
    }

    pub fn shell() -> Grid {
        super::shell(VOLUME_SIZE, BALL_RADIUS, SHELL_INNER)
    }
}
