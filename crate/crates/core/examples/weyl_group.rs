//! Cartan data, the Weyl group of D4, and genericity of parameters.

use quiverlab::quiver::{
    dot_action, enumerate_weyl, genericity, variety_dimension, GenericityMode, Quiver, RootVec,
    WeightVec, WeylWord,
};

fn main() -> quiverlab::Result<()> {
    let d4 = Quiver::dynkin_d(4);
    let c = d4.cartan_data();
    println!("D4 Cartan matrix: {:?}", c.cartan);
    println!("finite type: {}", c.is_finite_type());

    let w = enumerate_weyl(&c)?;
    println!("|W(D4)| = {}", w.len());
    let longest = w.iter().max_by_key(|e| e.word.0.len()).expect("nonempty group");
    println!("a longest element: {:?}", longest.word.0);

    let a2 = Quiver::dynkin_a(2).cartan_data();
    let d = WeightVec(vec![1, 1]);
    let v = RootVec(vec![1, 1]);
    println!("dim M(d=(1,1), v=(1,1)) over A2 = {}", variety_dimension(&a2, &d, &v));
    let moved = dot_action(&a2, &WeylWord(vec![0]), &d, &v);
    println!("s_1 . v = {:?}", moved.0);

    let m = WeightVec(vec![1, 1]);
    let lam = WeightVec(vec![1, -1]);
    let verdict = genericity(&a2, &m, &lam, &v, GenericityMode::Uv, None)?;
    println!("(m, lambda) = ((1,1), (1,-1)) generic for v = (1,1): {}", verdict.is_generic());
    Ok(())
}
