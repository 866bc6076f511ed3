use folint::poly::homog::HPoly;
use folint::polyform::ProjectiveOneForm;
use folint::rat::q;
use folint::resolution::*;

fn xp(i: u32, j: u32, k: u32, c: i64) -> HPoly {
    HPoly::monomial(i, j, k, q(c))
}

fn main() {
    let a = xp(2, 0, 3, 3).add(&xp(0, 2, 3, -1));
    let b = xp(0, 4, 1, -5).add(&xp(1, 1, 3, 1));
    let c = xp(0, 5, 0, 5).add(&xp(3, 0, 2, -3));
    eprintln!("saturating...");
    let omega = ProjectiveOneForm::saturate(a, b, c).unwrap();
    eprintln!("r = {}", omega.foliation_degree());
    eprintln!("chart 2 dehom...");
    let f2 = dehomogenize(&omega, 2);
    eprintln!("f2.a = {:?}", f2.a);
    eprintln!("f2.b = {:?}", f2.b);
    eprintln!("affine singular points chart 2...");
    let pts = singular_points(&f2);
    eprintln!("pts: {:?}", pts);
}
