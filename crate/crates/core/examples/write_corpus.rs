//! Regenerates the constructed part of `corpus/`: every group of order at
//! most 16, the L5 example and the Chein double of S3.
//!
//! Usage: cargo run --example write_corpus -- <corpus dir>

use std::path::{Path, PathBuf};

use loopcheck::corpus;
use loopcheck::loopfile::{print_loop_file, LoopFile, NamedLoop};
use loopcheck::FiniteLoop;

fn construction(name: &str) -> String {
    let s = match name {
        "Klein4" => "Z2 x Z2",
        "S3" => "dihedral, <a,b | a^3, b^2, bab^-1 = a^-1>",
        "Z4xZ2" | "Z2xZ2xZ2" | "Z3xZ3" | "Z6xZ2" | "Z8xZ2" | "Z4xZ4" | "Z4xZ2xZ2" | "Z2xD4" | "Z2xQ8" => {
            "direct product, pair (a, b) at label a*|B| + b"
        }
        "Z2^4" => "Klein4 x Klein4",
        "D4" | "D5" | "D6" | "D7" | "D8" => "dihedral, <a,b | a^n, b^2, bab^-1 = a^-1>, a^i b^j at label j*n + i",
        "Q8" => "metacyclic <a,b | a^4, b^2 = a^2, bab^-1 = a^3>",
        "Dic3" => "dicyclic <a,b | a^6, b^2 = a^3, bab^-1 = a^5>",
        "Q16" => "dicyclic <a,b | a^8, b^2 = a^4, bab^-1 = a^7>",
        "SD16" => "semidihedral <a,b | a^8, b^2, bab^-1 = a^3>",
        "M16" => "modular <a,b | a^8, b^2, bab^-1 = a^5>",
        "Z4:Z4" => "<a,b | a^4, b^4, bab^-1 = a^3>",
        "A4" => "V x| Z3, Z3 rotating the involutions of V",
        "Pauli" => "i^k X^a Z^b with ZX = -XZ",
        "(Z4xZ2):Z2" => "(Z4 x Z2) x| Z2, the involution sending a to ab",
        _ => "cyclic, x*y = x + y mod n",
    };
    s.to_string()
}

fn write(dir: &Path, file: &str, loops: Vec<NamedLoop>) {
    let text = print_loop_file(&LoopFile { loops, trailing: vec![] });
    std::fs::write(dir.join(file), text).expect("write corpus file");
}

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "corpus".into()));
    std::fs::create_dir_all(&dir).expect("create corpus dir");

    let groups = corpus::groups()
        .into_iter()
        .map(|(name, g)| {
            let mut l = NamedLoop::new(name.clone(), g);
            l.comments = vec![format!("group of order {}: {}", l.table.order(), construction(&name))];
            l
        })
        .collect();
    write(&dir, "groups.loop", groups);

    let l5 = FiniteLoop::validate(
        &[
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 3, 4, 0, 1],
            vec![3, 4, 1, 2, 0],
            vec![4, 2, 0, 1, 3],
        ],
        None,
    )
    .expect("L5 is a loop");
    let mut l5 = NamedLoop::new("L5", l5);
    l5.comments = vec!["order-5 loop from the worked example; not power-associative (x=2)".into()];
    write(&dir, "l5.loop", vec![l5]);

    let mut m12 = NamedLoop::new("M12", corpus::moufang12());
    m12.comments = vec![
        "nonassociative Moufang loop of order 12: Chein double M(S3, 2)".into(),
        "(g,0)(h,0)=(gh,0) (g,0)(h,1)=(hg,1) (g,1)(h,0)=(gh^-1,1) (g,1)(h,1)=(h^-1 g,0)".into(),
        "labels: (g, s) at s*6 + g with S3 labelled as in groups.loop".into(),
    ];
    write(&dir, "moufang12.loop", vec![m12]);
}
