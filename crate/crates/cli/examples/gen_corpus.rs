//! Regenerates the `corpus/` directory from the built-in catalog:
//! every connected graph on up to five vertices plus `c6` and `c8`, with
//! named aliases for the familiar shapes under `corpus/named/`.
//!
//! Run from the workspace: `cargo run -p chromahom-cli --example gen_corpus`

use std::fs;
use std::path::Path;

use chromahom::catalog;
use chromahom::graph::Graph;

fn write_graph(dir: &Path, name: &str, g: &Graph) -> std::io::Result<()> {
    let mut text = format!("# {name}: {} vertices, {} edges\n", g.n_vertices(), g.n_edges());
    text.push_str(&g.to_edge_list());
    fs::write(dir.join(format!("{name}.graph")), text)
}

fn main() -> std::io::Result<()> {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let named = root.join("named");
    fs::create_dir_all(&named)?;

    for (name, g) in catalog::corpus() {
        write_graph(&root, &name, &g)?;
    }

    let aliases: Vec<(&str, Graph)> = vec![
        ("k2", catalog::complete(2)),
        ("k3", catalog::complete(3)),
        ("k4", catalog::complete(4)),
        ("k5", catalog::complete(5)),
        ("p4", catalog::path(4)),
        ("c4", catalog::cycle(4)),
        ("c5", catalog::cycle(5)),
        ("paw", catalog::paw()),
        ("bowtie", catalog::bowtie()),
    ];
    for (name, g) in &aliases {
        write_graph(&named, name, g)?;
    }
    println!(
        "wrote {} corpus graphs and {} named aliases under {}",
        catalog::corpus().len(),
        aliases.len(),
        root.display()
    );
    Ok(())
}
