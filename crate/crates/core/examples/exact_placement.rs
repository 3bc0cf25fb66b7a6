//! Exact horizontal placement for fixed per-class radii, checked against a
//! brute-force grid, plus the text model for an external solver.
//!
//! cargo run --example exact_placement

use uavbs::channel::ClassId;
use uavbs::placement::{candidate_count, export_model, grid_oracle, solve_exact, RadiusMap, Rect, User};

fn main() -> uavbs::Result<()> {
    let users = vec![
        User::new(0.0, 0.0, 1),
        User::new(200.0, 0.0, 1),
        User::new(100.0, 173.2, 1),
        User::new(520.0, 60.0, 2),
        User::new(610.0, 240.0, 2),
        User::new(900.0, 900.0, 2),
    ];
    let mut radii = RadiusMap::new();
    radii.insert(ClassId(1), 120.0)?;
    radii.insert(ClassId(2), 450.0)?;

    let exact = solve_exact(&users, &radii)?;
    println!(
        "exact: {} of {} users at ({:.2}, {:.2}), {} candidates",
        exact.covered_count,
        users.len(),
        exact.x_d,
        exact.y_d,
        candidate_count(&users, &radii)?
    );
    println!("covered flags: {:?}", exact.covered);

    let bounds = Rect::bounding(&users).expect("non-empty");
    let grid = grid_oracle(&users, &radii, 1.0, bounds)?;
    println!("1 m grid: {} users at ({:.0}, {:.0})", grid.covered_count, grid.x_d, grid.y_d);

    println!("\n{}", export_model(&users, &radii, &bounds)?);
    Ok(())
}
