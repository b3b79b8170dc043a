use std::collections::{BTreeSet, VecDeque};

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use flatscan::complex::{betti, euler_characteristic, flat_filtration, lower_star, Grid};
use flatscan::distance::{bottleneck, wasserstein};
use flatscan::grassmann::{sample_flats, Flat};
use flatscan::json::{dpht_from_str, dpht_to_string};
use flatscan::persistence::{pd0_union_find, pd_reduction, PersistenceDiagram};
use flatscan::shapes::{self, fixtures};
use flatscan::transform::{
    betti_slice_euler, distinguishes, dpht_scan, euler_curve, hpht_vs_cpht_demo, instability_demo,
    pixel_center_lines, radon_chi,
};

fn grid_strategy() -> impl Strategy<Value = Grid> {
    (1usize..=7, 1usize..=7, any::<u64>()).prop_map(|(h, w, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Grid::from_fn(vec![h, w], |_| rng.random_bool(0.55)).unwrap()
    })
}

// 8-connected pixel components: closed pixels touching at a corner share a vertex.
fn pixel_components(g: &Grid) -> usize {
    let (h, w) = (g.dims()[0], g.dims()[1]);
    let mut seen = vec![false; h * w];
    let mut comps = 0;
    for start in 0..h * w {
        if !g.cells()[start] || seen[start] {
            continue;
        }
        comps += 1;
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(c) = queue.pop_front() {
            let (r, k) = ((c / w) as i64, (c % w) as i64);
            for dr in -1..=1 {
                for dk in -1..=1 {
                    let (rr, kk) = (r + dr, k + dk);
                    if rr < 0 || kk < 0 || rr >= h as i64 || kk >= w as i64 {
                        continue;
                    }
                    let idx = rr as usize * w + kk as usize;
                    if g.cells()[idx] && !seen[idx] {
                        seen[idx] = true;
                        queue.push_back(idx);
                    }
                }
            }
        }
    }
    comps
}

// V − E + F from the lattice points, unit edges and pixels of the union.
fn lattice_euler(g: &Grid) -> i64 {
    let (h, w) = (g.dims()[0], g.dims()[1]);
    let mut verts = BTreeSet::new();
    let mut edges = BTreeSet::new();
    let mut faces = 0i64;
    for r in 0..h {
        for c in 0..w {
            if !g.get(&[r, c]) {
                continue;
            }
            faces += 1;
            for (dr, dc) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                verts.insert((r + dr, c + dc));
            }
            edges.insert(((r, c), (r, c + 1)));
            edges.insert(((r + 1, c), (r + 1, c + 1)));
            edges.insert(((r, c), (r + 1, c)));
            edges.insert(((r, c + 1), (r + 1, c + 1)));
        }
    }
    verts.len() as i64 - edges.len() as i64 + faces
}

fn diagram_strategy() -> impl Strategy<Value = PersistenceDiagram> {
    prop::collection::vec((0.0f64..5.0, 0.0f64..3.0), 0..4)
        .prop_map(|pts| PersistenceDiagram::new(0, pts.into_iter().map(|(b, l)| (b, b + l)).collect()).unwrap())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

// Exhaustive optimal matching on the diagonal-augmented square matrix,
// returning (bottleneck, Σ cost^p).
fn brute_force(a: &PersistenceDiagram, b: &PersistenceDiagram, p: f64) -> (f64, f64) {
    let (x, y) = (a.points(), b.points());
    let n = x.len() + y.len();
    let cost = |i: usize, j: usize| -> f64 {
        match (i < x.len(), j < y.len()) {
            (true, true) => (x[i].0 - y[j].0).abs().max((x[i].1 - y[j].1).abs()),
            (true, false) => {
                if j - y.len() == i {
                    (x[i].1 - x[i].0) / 2.0
                } else {
                    f64::INFINITY
                }
            }
            (false, true) => {
                if i - x.len() == j {
                    (y[j].1 - y[j].0) / 2.0
                } else {
                    f64::INFINITY
                }
            }
            (false, false) => 0.0,
        }
    };
    let mut best = (f64::INFINITY, f64::INFINITY);
    for perm in permutations(n) {
        let costs: Vec<f64> = perm.iter().enumerate().map(|(i, &j)| cost(i, j)).collect();
        best.0 = best.0.min(costs.iter().cloned().fold(0.0, f64::max));
        best.1 = best.1.min(costs.iter().map(|c| c.powf(p)).sum());
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn betti_numbers_match_pixel_oracles(g in grid_strategy()) {
        let s = g.to_shape();
        let b = betti(&s, 1);
        let chi = lattice_euler(&g);
        prop_assert_eq!(euler_characteristic(&s), chi);
        prop_assert_eq!(b[0], pixel_components(&g));
        prop_assert_eq!(b[0] as i64 - b[1] as i64, chi);
    }

    #[test]
    fn union_find_equals_reduction(g in grid_strategy(), seed in any::<u64>()) {
        let s = g.to_shape();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vals: Vec<f64> = (0..s.vertex_count()).map(|_| rng.random_range(0..4) as f64).collect();
        let f = lower_star(&s, &vals).unwrap();
        prop_assert_eq!(pd0_union_find(&s, &f), pd_reduction(&s, &f, 0).unwrap().remove(0));
    }

    #[test]
    fn euler_curve_ends_at_euler_characteristic(g in grid_strategy(), seed in any::<u64>()) {
        let s = g.to_shape();
        let flat = sample_flats(1, 2, 1, 4.0, seed).unwrap().remove(0);
        let curve = euler_curve(&s, &flat_filtration(&s, &flat).unwrap());
        prop_assert_eq!(curve.final_value(), euler_characteristic(&s));
    }

    #[test]
    fn bottleneck_and_wasserstein_match_brute_force(a in diagram_strategy(), b in diagram_strategy()) {
        let (bn, w1) = brute_force(&a, &b, 1.0);
        let (_, w2) = brute_force(&a, &b, 2.0);
        prop_assert!((bottleneck(&a, &b).unwrap().value - bn).abs() < 1e-12);
        prop_assert!((wasserstein(&a, &b, 1.0).unwrap().value - w1).abs() < 1e-9);
        prop_assert!((wasserstein(&a, &b, 2.0).unwrap().value - w2.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn bottleneck_is_stable_under_vertex_perturbation(g in grid_strategy(), seed in any::<u64>()) {
        let s = g.to_shape();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f: Vec<f64> = (0..s.vertex_count()).map(|_| rng.random_range(-2.0..2.0)).collect();
        let h: Vec<f64> = f.iter().map(|x| x + rng.random_range(-0.3..0.3)).collect();
        let gap = f.iter().zip(&h).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        let df = pd_reduction(&s, &lower_star(&s, &f).unwrap(), 1).unwrap();
        let dh = pd_reduction(&s, &lower_star(&s, &h).unwrap(), 1).unwrap();
        for (x, y) in df.iter().zip(&dh) {
            prop_assert!(bottleneck(x, y).unwrap().value <= gap + 1e-12);
        }
    }
}

#[test]
fn ball_and_shell_scans() {
    let line = Flat::line(&[0.0, 0.0, 1.0], &[0.0, 0.0, 0.0]).unwrap();
    let ball = fixtures::ball().to_shape();
    let r = dpht_scan(&ball, 1, std::slice::from_ref(&line), None, None).unwrap();
    assert_eq!(r.records[0].diagrams[0].points(), &[(0.0, f64::INFINITY)]);
    let shell = fixtures::shell().to_shape();
    let r = dpht_scan(&shell, 1, &[line], None, None).unwrap();
    assert_eq!(r.records[0].diagrams[0].len(), 2);
}

#[test]
fn scan_commutes_with_permutation() {
    let s = fixtures::annulus().to_shape();
    let flats = sample_flats(1, 2, 12, s.bounding_radius(), 3).unwrap();
    let mut reversed = flats.clone();
    reversed.reverse();
    let a = dpht_scan(&s, 1, &flats, Some(1), None).unwrap();
    let mut b = dpht_scan(&s, 1, &reversed, Some(1), None).unwrap();
    b.records.reverse();
    assert_eq!(a, b);
}

#[test]
fn scan_json_round_trip() {
    let s = fixtures::annulus().to_shape();
    let flats = sample_flats(1, 2, 4, s.bounding_radius(), 11).unwrap();
    let mut r = dpht_scan(&s, 1, &flats, Some(1), None).unwrap();
    r.shape_id = "annulus".into();
    let text = dpht_to_string(&r);
    let back = dpht_from_str(&text).unwrap();
    assert_eq!(back, r);
    assert_eq!(dpht_to_string(&back), text);
}

#[test]
fn annulus_tubular_curve_and_slices() {
    let s = fixtures::annulus().to_shape();
    let line = Flat::line(&[1.0, 0.0], &[0.0, 0.0]).unwrap();
    let curve = euler_curve(&s, &flat_filtration(&s, &line).unwrap());
    assert_eq!(curve.breakpoints()[0].1, 2);
    assert_eq!(curve.final_value(), 0);
    let eps = flatscan::complex::default_epsilon(&s);
    assert_eq!(radon_chi(&s, &line, eps).unwrap(), 2);
    assert_eq!(betti_slice_euler(&s, &line, 1, eps).unwrap(), 2);
    let far = Flat::line(&[1.0, 0.0], &[0.0, 40.0]).unwrap();
    assert_eq!(radon_chi(&s, &far, eps).unwrap(), 0);
    assert_eq!(betti_slice_euler(&s, &far, 1, eps).unwrap(), 0);
}

#[test]
fn point_flats_see_occupancy() {
    let g = Grid::parse("grid 3 3\n1 0 0\n0 0 0\n0 0 0\n").unwrap();
    let s = g.to_shape();
    let eps = flatscan::complex::default_epsilon(&s);
    // pixel (row 0, col 0) has centre (-1, -1)
    assert_eq!(radon_chi(&s, &Flat::point(&[-1.0, -1.0]).unwrap(), eps).unwrap(), 1);
    assert_eq!(radon_chi(&s, &Flat::point(&[1.0, 1.0]).unwrap(), eps).unwrap(), 0);
}

#[test]
fn shell_plane_slice_is_an_annulus() {
    let s = fixtures::shell().to_shape();
    let plane = flatscan::transform::hyperplane(&[0.3, 0.2, 1.0], 0.37).unwrap();
    let eps = flatscan::complex::default_epsilon(&s);
    assert_eq!(betti_slice_euler(&s, &plane, 2, eps).unwrap(), 0);
}

#[test]
fn isolated_pixel_changes_are_distinguished() {
    let lines = pixel_center_lines(5);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut tried = 0;
    while tried < 30 {
        let a = Grid::from_fn(vec![5, 5], |_| rng.random_bool(0.4)).unwrap();
        assert!(!distinguishes(&a, &a, &lines).unwrap());
        let (r, c) = (rng.random_range(0..5usize), rng.random_range(0..5usize));
        let lonely = (r.saturating_sub(1)..=(r + 1).min(4))
            .all(|rr| (c.saturating_sub(1)..=(c + 1).min(4)).all(|cc| (rr, cc) == (r, c) || !a.get(&[rr, cc])));
        if !lonely {
            continue;
        }
        tried += 1;
        let mut b = a.clone();
        b.set(&[r, c], !a.get(&[r, c]));
        assert!(distinguishes(&a, &b, &lines).unwrap());
    }
}

// A corner pixel glued to the rest along two edges: its closure lies in every
// thickened slice through its centre and meets the rest in a contractible
// set, so flipping it leaves every slice Euler characteristic unchanged.
#[test]
fn glued_corner_pixel_is_invisible_to_thick_slices() {
    let lines = pixel_center_lines(5);
    let a = Grid::parse("grid 5 5\n11101\n11111\n01100\n10000\n10000\n").unwrap();
    let mut b = a.clone();
    b.set(&[0, 0], false);
    assert!(!distinguishes(&a, &b, &lines).unwrap());
}

#[test]
fn instability_controls() {
    let line = Flat::line(&[1.0, 0.0], &[0.0, 0.3]).unwrap();
    let a = fixtures::annulus().to_shape();
    let same = instability_demo(&a, &a, &line).unwrap();
    assert!(same.bottleneck.iter().all(|&d| d == 0.0));
    let d = shapes::disk(32, 10.0).to_shape();
    let moved = shapes::shifted_disk(32, 10.0, 1.0, 0.0).to_shape();
    let r = instability_demo(&d, &moved, &line).unwrap();
    assert!(r.bottleneck.iter().all(|d| d.is_finite() && *d <= 1.5));
}

#[test]
fn convex_disk_has_one_component_both_ways() {
    let s = fixtures::disk().to_shape();
    let r = hpht_vs_cpht_demo(&s, &[0.0, 1.0]).unwrap();
    assert_eq!(r.height.len(), 1);
    assert_eq!(r.central_count, 1);
    assert!(r.shift_error < 1e-9);
}
