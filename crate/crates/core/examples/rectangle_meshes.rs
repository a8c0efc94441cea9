//! Structured Tri6 and Quad8 meshes of a rectangle.

use femkit::fem2d::{quad8_mesh_rectangle, tri6_mesh_rectangle};

fn main() -> femkit::Result<()> {
    for (nx, ny) in [(1, 1), (2, 1), (4, 3)] {
        let tri = tri6_mesh_rectangle(0.0, 0.0, 4.0, 3.0, nx, ny)?;
        let quad = quad8_mesh_rectangle(0.0, 0.0, 4.0, 3.0, nx, ny)?;
        println!(
            "{nx}x{ny}: tri6 {} nodes / {} elements, quad8 {} nodes / {} elements",
            tri.coords.len(),
            tri.connectivity.len(),
            quad.coords.len(),
            quad.connectivity.len()
        );
    }
    let quad = quad8_mesh_rectangle(0.0, 0.0, 1.0, 1.0, 1, 1)?;
    println!(
        "{}",
        serde_json::to_string_pretty(&quad).expect("mesh serializes")
    );
    Ok(())
}
