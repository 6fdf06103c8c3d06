use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use capfloat::regions::{
    endpoint_balance_capillary, endpoint_balance_curve, intersection_curve, label_at, region_map, tangency_curve,
    trace_tangency, EndpointBalance, RegionLabel, Window,
};
use capfloat::{find_equilibria, DimensionlessParams};

fn params(a: f64, c: f64, g: f64) -> DimensionlessParams {
    DimensionlessParams::new(a, c, g).unwrap()
}

fn count(a: f64, c: f64, g: f64) -> usize {
    find_equilibria(&params(a, c, g)).len()
}

#[test]
fn zero_contact_angle_strips() {
    let window = Window { mass_ratio: (0.1, 6.0), capillary_ratio: (0.1, 4.0) };
    let map = region_map(0.0, &window, (30, 20)).unwrap();
    for (a, _, label) in map.cells() {
        if a < PI {
            assert_eq!(label, RegionLabel::One);
        } else {
            assert_eq!(label, RegionLabel::Zero);
        }
    }
    let c1 = &map.curves[0];
    assert!(c1.analytic);
    assert!(c1.points.iter().all(|pt| pt.mass_ratio == PI));
}

#[test]
fn light_strip_is_single_everywhere() {
    for g in [0.0, 0.5, FRAC_PI_2, 2.0, PI] {
        let window = Window { mass_ratio: (0.06, PI - 1e-4), capillary_ratio: (0.025, 5.0) };
        let map = region_map(g, &window, (15, 15)).unwrap();
        assert!(map.cells().all(|(_, _, l)| l == RegionLabel::One), "gamma = {g}");
    }
}

#[test]
fn no_invalid_cells_up_to_right_angle() {
    for g in [0.0, 0.3, FRAC_PI_4, 1.2, FRAC_PI_2] {
        let map = region_map(g, &Window::default(), (40, 40)).unwrap();
        assert!(map.cells().all(|(_, _, l)| l != RegionLabel::OneValidOneInvalid), "gamma = {g}");
    }
}

#[test]
fn invalid_cells_appear_beyond_right_angle() {
    let map = region_map(0.75 * PI, &Window::default(), (60, 60)).unwrap();
    assert!(map.cells().any(|(_, _, l)| l == RegionLabel::OneValidOneInvalid));
    assert!(!map.curves[2].points.is_empty());
}

#[test]
fn crossing_endpoint_balance_changes_count_by_one() {
    for g in [FRAC_PI_4, FRAC_PI_2, 2.0, 2.8] {
        let window = Window::default();
        let curve = endpoint_balance_curve(g, &window, 40);
        assert!(!curve.points.is_empty());
        for pt in &curve.points {
            // Stay clear of the tangency curve, where counts change by two.
            let (lo, hi) = (pt.mass_ratio * (1.0 - 1e-4), pt.mass_ratio * (1.0 + 1e-4));
            let c = pt.capillary_ratio;
            let star = capfloat::critical_mass_ratio(c, g).map(|m| m.mass_ratio).unwrap_or(f64::INFINITY);
            if (star - pt.mass_ratio).abs() < 1e-2 {
                continue;
            }
            let diff = count(lo, c, g).abs_diff(count(hi, c, g));
            assert_eq!(diff, 1, "gamma = {g}, {pt:?}");
        }
    }
}

#[test]
fn tangency_crossings_change_count_by_two() {
    for g in [FRAC_PI_2, 2.0, 2.8] {
        let curve = tangency_curve(g, &[3.5, 4.5, 6.0, 9.0], (0.025, 5.0)).unwrap();
        for pt in &curve.points {
            let near = count(pt.mass_ratio, pt.capillary_ratio * (1.0 - 1e-3), g);
            let far = count(pt.mass_ratio, pt.capillary_ratio * (1.0 + 1e-3), g);
            assert_eq!(near.abs_diff(far), 2, "gamma = {g}, {pt:?}");
        }
    }
}

#[test]
fn tangency_at_unit_capillary_and_small_c_trend() {
    let a_star = capfloat::critical_mass_ratio(1.0, FRAC_PI_2).unwrap().mass_ratio;
    let curve = tangency_curve(FRAC_PI_2, &[a_star, 50.0, 200.0], (0.025, 5.0)).unwrap();
    assert!((curve.points[0].capillary_ratio - 1.0).abs() < 1e-3);
    // Large A: C ≈ √(2/(A − 2 − π)).
    for pt in &curve.points[1..] {
        let approx = (2.0 / (pt.mass_ratio - 2.0 - PI)).sqrt();
        assert!((pt.capillary_ratio - approx).abs() / approx < 0.05, "{pt:?}");
    }
}

#[test]
fn tangency_trace_points_are_tangent() {
    let samples: Vec<f64> = (1..=20).map(|k| 0.25 * k as f64).collect();
    let curve = trace_tangency(0.75 * PI, &samples);
    assert!(curve.gaps.is_empty());
    for pt in &curve.points {
        let p = params(pt.mass_ratio, pt.capillary_ratio, 0.75 * PI);
        let f = capfloat::total_force(pt.wetting, &p);
        assert!(f.abs() < 1e-9 * (1.0 + pt.capillary_ratio.powi(2) * (1.0 + pt.mass_ratio)));
    }
    let quarter = trace_tangency(FRAC_PI_4, &[0.5, 2.0]);
    assert_eq!(quarter.gaps, vec![0.5]);
}

#[test]
fn hydrophobic_limit_intersection_curve() {
    assert!(matches!(endpoint_balance_capillary(PI, 4.0), EndpointBalance::VerticalLine));
    let window = Window::default();
    let curve = intersection_curve(PI, 400);
    let inside: Vec<_> = curve.points.iter().filter(|pt| window.contains(pt.mass_ratio, pt.capillary_ratio)).collect();
    assert!(!inside.is_empty());
    for pt in inside {
        // I grows with C, so the larger root intersects just below the curve.
        let below = label_at(&params(pt.mass_ratio, pt.capillary_ratio * (1.0 - 1e-3), PI));
        let above = label_at(&params(pt.mass_ratio, pt.capillary_ratio * (1.0 + 1e-3), PI));
        assert_eq!(below, RegionLabel::OneValidOneInvalid, "{pt:?}");
        assert_eq!(above, RegionLabel::Two, "{pt:?}");
    }
}

#[test]
fn intersection_curve_separates_labels() {
    let g = 0.75 * PI;
    let window = Window::default();
    let curve = intersection_curve(g, 400);
    let inside: Vec<_> = curve.points.iter().filter(|pt| window.contains(pt.mass_ratio, pt.capillary_ratio)).collect();
    assert!(inside.len() > 20);
    for pt in &inside {
        let below = label_at(&params(pt.mass_ratio, pt.capillary_ratio * (1.0 - 1e-4), g));
        let above = label_at(&params(pt.mass_ratio, pt.capillary_ratio * (1.0 + 1e-4), g));
        assert_eq!(below, RegionLabel::OneValidOneInvalid, "{pt:?}");
        assert_eq!(above, RegionLabel::Two, "{pt:?}");
    }
}

#[test]
fn two_configuration_cell() {
    let window = Window { mass_ratio: (3.0, 4.6), capillary_ratio: (1.0, 3.0) };
    let map = region_map(FRAC_PI_2, &window, (9, 11)).unwrap();
    let i = map.mass_axis.iter().position(|&a| (a - 3.8).abs() < 1e-12).unwrap();
    let j = map.capillary_axis.iter().position(|&c| (c - 2.0).abs() < 1e-12).unwrap();
    assert_eq!(map.label(i, j), RegionLabel::Two);
}

#[test]
fn refinement_agrees_away_from_boundaries() {
    let window = Window { mass_ratio: (0.5, 10.0), capillary_ratio: (0.2, 4.0) };
    for g in [FRAC_PI_4, 0.75 * PI] {
        let coarse = region_map(g, &window, (21, 21)).unwrap();
        let fine = region_map(g, &window, (41, 41)).unwrap();
        for i in 1..20 {
            for j in 1..20 {
                let neighbours = [(i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)];
                let interior = neighbours.iter().all(|&(k, l)| coarse.label(k, l) == coarse.label(i, j));
                if interior {
                    assert_eq!(coarse.label(i, j), fine.label(2 * i, 2 * j), "gamma = {g}, cell ({i}, {j})");
                }
            }
        }
    }
}
