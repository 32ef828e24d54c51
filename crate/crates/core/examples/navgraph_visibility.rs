//! Visibility graph in a room with a pillar: points that can see each other
//! across free floor are joined, and routes bend around the pillar.
//!
//!     cargo run --example navgraph_visibility

use floorflow::geom::{FaceWithHoles, Point2, Polygon};
use floorflow::navgraph::{build_visibility_graph, shortest_path, NavVertex, VertexTag};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let room = Polygon::rect(0.0, 0.0, 10.0, 6.0)?;
    let pillar = Polygon::rect(4.0, 2.0, 6.0, 4.0)?;
    let face = FaceWithHoles::new(room, vec![pillar])?;

    let spots = [
        (1.0, 3.0, VertexTag::Door),
        (9.0, 3.0, VertexTag::Desk),
        // The pillar's corners, offset slightly into the free floor.
        (3.9, 1.9, VertexTag::Other),
        (6.1, 1.9, VertexTag::Other),
        (3.9, 4.1, VertexTag::Other),
        (6.1, 4.1, VertexTag::Other),
    ];
    let points: Vec<NavVertex> = spots
        .iter()
        .enumerate()
        .map(|(i, &(x, y, tag))| NavVertex::new(i, Point2::new(x, y), tag))
        .collect();

    let graph = build_visibility_graph(&face, &points, 1e-6)?;
    println!("{} vertices, {} edges", graph.len(), graph.edges().len());
    for &(a, b, w) in graph.edges() {
        println!("  {a} - {b}  {w:.3} m");
    }

    let path = shortest_path(&graph, 0, 1)?;
    println!(
        "door -> desk: {:.3} m via {:?} (straight line would be {:.3} m)",
        path.length(),
        path.vertex_ids(),
        graph.position(0).distance(graph.position(1))
    );
    Ok(())
}
