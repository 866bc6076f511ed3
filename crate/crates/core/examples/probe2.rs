use folint::poly::homog::HPoly;
use folint::rat::q;

fn xp(i: u32, j: u32, k: u32, c: i64) -> HPoly {
    HPoly::monomial(i, j, k, q(c))
}

fn main() {
    let a = xp(2, 0, 3, 3).add(&xp(0, 2, 3, -1));
    let b = xp(0, 4, 1, -5).add(&xp(1, 1, 3, 1));
    let c = xp(0, 5, 0, 5).add(&xp(3, 0, 2, -3));
    eprintln!("gcd(a,b)...");
    let g1 = a.gcd(&b);
    eprintln!("g1 = {}", g1);
    eprintln!("gcd(g1,c)...");
    let g2 = g1.gcd(&c);
    eprintln!("g2 = {}", g2);
}
