//! Print the canonical presentation text of each shipped family at `p = 3`.
//!
//! ```sh
//! cargo run -p pgv-core --example dump_pcp
//! ```

fn main() {
    for (name, g) in [
        ("family_a_p3_n4", pgv_core::families::family_a(3, 4)),
        ("family_b_p3", pgv_core::families::family_b(3)),
        ("family_c_p3", pgv_core::families::family_c(3)),
        ("heisenberg_p3", pgv_core::families::heisenberg(3)),
    ] {
        println!("=== {name} ===");
        print!("{}", g.to_text());
    }
}
