use folint::linsys::LinearSystemSolver;
use folint::poly::homog::HPoly;
use folint::polyform::ProjectiveOneForm;
use folint::rat::q;
use folint::resolution::*;

fn xp(i: u32, j: u32, k: u32, c: i64) -> HPoly {
    HPoly::monomial(i, j, k, q(c))
}

fn main() {
    // Example 2: sections of T = 5L* - 2E1 - 2E2 - E3..E19
    let omega2 = {
        let a = xp(2, 0, 3, 3);
        let b = xp(0, 4, 1, -5);
        let c = xp(0, 5, 0, 5).add(&xp(3, 0, 2, -3));
        ProjectiveOneForm::saturate(a, b, c).unwrap()
    };
    let cfg2 = resolve_dicritical(&omega2, &ResolveOptions::default()).unwrap();
    let solver = LinearSystemSolver::new(&cfg2).unwrap();
    let mut mult = vec![1u32; 19];
    mult[0] = 2;
    mult[1] = 2;
    let sec = solver.global_sections(5, &mult).unwrap();
    println!("Example 2 h0 = {}", sec.basis.len());
    for f in &sec.basis {
        println!("  {}", f);
    }

    // Example 1: T = 10L* - 2E1 - E2 - E3 - 8E4 - 2E5..E11 - E12 - E13
    let omega1 = {
        let a = xp(0, 1, 5, 2);
        let b = xp(0, 5, 1, -7).add(&xp(1, 0, 5, -3)).add(&xp(0, 1, 5, 1));
        let c = xp(0, 6, 0, 7).add(&xp(1, 1, 4, 1)).add(&xp(0, 2, 4, -1));
        ProjectiveOneForm::saturate(a, b, c).unwrap()
    };
    let cfg1 = resolve_dicritical(&omega1, &ResolveOptions::default()).unwrap();
    let solver1 = LinearSystemSolver::new(&cfg1).unwrap();
    let mult1 = vec![2u32, 1, 1, 8, 2, 2, 2, 2, 2, 2, 2, 1, 1];
    let sec1 = solver1.global_sections(10, &mult1).unwrap();
    println!("Example 1 h0 = {}", sec1.basis.len());
    for f in &sec1.basis {
        println!("  {}", f);
    }
}
