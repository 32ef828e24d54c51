//! Pruned Delaunay graph for two rooms joined by a door: the triangulation
//! of the navigation points loses every edge that passes through a wall.
//!
//!     cargo run --example pruned_delaunay

use floorflow::geom::{delaunay_triangulate, Point2, Segment};
use floorflow::navgraph::{build_pruned_delaunay_graph, shortest_path, NavVertex, VertexTag};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // A 10 m x 5 m floor split at x = 5 with a door between y = 2 and y = 3.
    let walls = vec![
        Segment::new(Point2::new(5.0, 0.0), Point2::new(5.0, 2.0))?,
        Segment::new(Point2::new(5.0, 3.0), Point2::new(5.0, 5.0))?,
    ];
    let mut points = Vec::new();
    for &x in &[1.0, 2.5, 4.0, 6.0, 7.5, 9.0] {
        for &y in &[1.0, 2.5, 4.0] {
            points.push(NavVertex::new(
                points.len(),
                Point2::new(x, y),
                VertexTag::Desk,
            ));
        }
    }
    let door = points.len();
    points.push(NavVertex::new(door, Point2::new(5.0, 2.5), VertexTag::Door));

    let positions: Vec<Point2> = points.iter().map(|v| v.position).collect();
    let tris = delaunay_triangulate(&positions)?;
    let graph = build_pruned_delaunay_graph(&points, &walls, &[])?;
    println!(
        "{} points, {} triangles, {} edges kept after pruning",
        points.len(),
        tris.len(),
        graph.edges().len()
    );

    let (west, east) = (0, 17);
    let path = shortest_path(&graph, west, east)?;
    println!(
        "({}) -> ({}): {:.3} m through {:?}; passes the door: {}",
        fmt(graph.position(west)),
        fmt(graph.position(east)),
        path.length(),
        path.vertex_ids(),
        path.vertex_ids().contains(&door)
    );
    Ok(())
}

fn fmt(p: Point2) -> String {
    format!("{}, {}", p.x, p.y)
}
