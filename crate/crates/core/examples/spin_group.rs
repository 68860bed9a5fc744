// Normal forms in the spin extension and the 2-cocycle of the section.

use gridfloer::spin::{cocycle, sigma};
use gridfloer::{GeneratorWord, Label, Permutation, SpinElement};

pub fn run_example() -> Vec<String> {
    let mut lines = Vec::new();
    let t01 = SpinElement::lift(3, Label::new(0, 1)).unwrap();
    let sq = t01.multiply(&t01).unwrap();
    lines.push(format!("lift(0,1)^2 = {sq}"));

    // disjoint lifts anticommute
    let a = SpinElement::lift(4, Label::new(0, 1)).unwrap();
    let b = SpinElement::lift(4, Label::new(2, 3)).unwrap();
    lines.push(format!(
        "ab = {}, ba = {}",
        a.multiply(&b).unwrap(),
        b.multiply(&a).unwrap()
    ));

    let word = GeneratorWord::new(vec![Label::new(1, 2), Label::new(0, 2), Label::new(1, 0)]);
    lines.push(format!(
        "normal form of t(1,2) t(0,2) t(1,0) = {}",
        word.evaluate(3).unwrap()
    ));
    lines.push(format!("sigma(4) = {}", sigma(4)));

    let p = Permutation::new(vec![1, 2, 0]).unwrap();
    let q = Permutation::new(vec![0, 2, 1]).unwrap();
    lines.push(format!("c({p}, {q}) = {}", cocycle(&p, &q).unwrap()));
    lines
}

#[allow(dead_code)]
fn main() {
    for l in run_example() {
        println!("{l}");
    }
}
