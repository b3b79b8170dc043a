//! Built-in demonstrations on generated shapes.

use std::f64::consts::TAU;
use std::fmt::Write;

use clap::ValueEnum;

use flatscan::complex::flat_filtration;
use flatscan::persistence::{pd0_union_find, pd_reduction};
use flatscan::shapes::fixtures;
use flatscan::transform::{chi_pair, hpht_vs_cpht_demo, instability_demo, ChiCase};
use flatscan::Flat;

#[derive(Clone, Copy, ValueEnum)]
pub enum DemoName {
    Annulus,
    BallSphere,
    HphtVsCpht,
    ChiTable,
}

struct Checks<'a> {
    out: &'a mut String,
    ok: bool,
}

impl Checks<'_> {
    fn check<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, expected: T, got: T) {
        if expected == got {
            let _ = writeln!(self.out, "PASS: {what}");
        } else {
            self.ok = false;
            let _ = writeln!(self.out, "FAIL: {what}\n  expected {expected:?}\n  got      {got:?}");
        }
    }
}

pub fn run(name: DemoName, out: &mut String) -> bool {
    let mut c = Checks { out, ok: true };
    match name {
        DemoName::Annulus => annulus(&mut c),
        DemoName::BallSphere => ball_sphere(&mut c),
        DemoName::HphtVsCpht => hpht_vs_cpht(&mut c),
        DemoName::ChiTable => chi_table(&mut c),
    }
    c.ok
}

fn horizontal(y: f64) -> Flat {
    Flat::line(&[1.0, 0.0], &[0.0, y]).expect("valid line")
}

fn annulus(c: &mut Checks) {
    let s = fixtures::annulus().to_shape();
    let line = horizontal(0.0);
    let dgms = pd_reduction(&s, &flat_filtration(&s, &line).expect("2D line"), 1).expect("degree 1 < 2");
    c.check("tubular-through-hole PD₀ has 2 points", 2, dgms[0].len());
    c.check("tubular-through-hole PD₁ has 1 essential class", 1, dgms[1].essential_count());
    let plugged = fixtures::pinholed_annulus().to_shape();
    let r = instability_demo(&s, &plugged, &line).expect("same ambient dimension");
    c.check("one-pixel hole: degree-1 bottleneck is inf", f64::INFINITY, r.bottleneck[1]);
}

fn ball_sphere(c: &mut Checks) {
    let line = Flat::line(&[1.0, 0.0, 0.0], &[0.0, 0.0, 0.0]).expect("valid line");
    let count = |g: flatscan::complex::Grid| {
        let s = g.to_shape();
        pd0_union_find(&s, &flat_filtration(&s, &line).expect("3D line")).len()
    };
    c.check("shell PD₀ count 2", 2, count(fixtures::shell()));
    c.check("ball PD₀ count 1", 1, count(fixtures::ball()));
}

fn hpht_vs_cpht(c: &mut Checks) {
    let s = fixtures::annulus().to_shape();
    for j in 0..8 {
        let (sin, cos) = (TAU * j as f64 / 8.0).sin_cos();
        let snap = |x: f64| if x.abs() < 1e-15 { 0.0 } else { x };
        let v = [snap(cos), snap(sin)];
        let r = hpht_vs_cpht_demo(&s, &v).expect("2D direction");
        c.check(
            &format!("v = ({:.3}, {:.3}): height PD₀ shifted by M matches tangent-line PD₀", v[0], v[1]),
            true,
            r.shift_error <= 1e-9,
        );
    }
    let r = hpht_vs_cpht_demo(&s, &[0.0, 1.0]).expect("2D direction");
    c.check("annulus, v = e₂: height PD₀ has 1 point", 1, r.height.len());
    c.check("annulus, line through the hole: PD₀ has 2 points", 2, r.central_count);
    let d = hpht_vs_cpht_demo(&fixtures::disk().to_shape(), &[0.0, 1.0]).expect("2D direction");
    c.check("disk: 1 point both ways", (1, 1), (d.height.len(), d.central_count));
}

fn chi_table(c: &mut Checks) {
    let _ = writeln!(c.out, "{:>3} {:>3} {:>6} {:>6}  case", "m", "n", "χ₁", "χ₂");
    let mut bad = Vec::new();
    for n in 1..=12 {
        for m in 0..n {
            let p = chi_pair(m, n).expect("m < n");
            let _ = writeln!(c.out, "{m:>3} {n:>3} {:>6} {:>6}  {}", p.chi1, p.chi2, p.case.tag());
            let ok = match p.case {
                ChiCase::Points => p.chi1 == 1 && p.chi2 == 0,
                ChiCase::OddOdd => p.chi1 == p.chi2,
                _ => p.chi1 != p.chi2 && p.ratio_identity_holds(),
            };
            if !ok {
                bad.push((m, n));
            }
        }
    }
    c.check("χ₁ ≠ χ₂ outside the both-odd case, ratio identity when both even", Vec::new(), bad);
}
