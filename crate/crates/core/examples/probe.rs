use folint::poly::homog::HPoly;
use folint::polyform::ProjectiveOneForm;
use folint::rat::q;
use folint::resolution::*;

fn xp(i: u32, j: u32, k: u32, c: i64) -> HPoly {
    HPoly::monomial(i, j, k, q(c))
}

fn main() {
    let which = std::env::args().nth(1).unwrap_or_else(|| "1".into());
    let omega = match which.as_str() {
        "1" => {
            let a = xp(0, 1, 5, 2);
            let b = xp(0, 5, 1, -7).add(&xp(1, 0, 5, -3)).add(&xp(0, 1, 5, 1));
            let c = xp(0, 6, 0, 7).add(&xp(1, 1, 4, 1)).add(&xp(0, 2, 4, -1));
            ProjectiveOneForm::saturate(a, b, c).unwrap()
        }
        "4" => {
            let a = xp(2, 0, 3, 3).add(&xp(0, 2, 3, -1));
            let b = xp(0, 4, 1, -5).add(&xp(1, 1, 3, 1));
            let c = xp(0, 5, 0, 5).add(&xp(3, 0, 2, -3));
            ProjectiveOneForm::saturate(a, b, c).unwrap()
        }
        _ => panic!(),
    };
    eprintln!("r = {}", omega.foliation_degree());
    eprintln!("finding plane singular points...");
    let pts = plane_singular_points(&omega).unwrap();
    eprintln!("points: {:?}", pts);
    eprintln!("resolving...");
    let cfg = resolve_dicritical(&omega, &ResolveOptions::default()).unwrap();
    eprintln!("n = {}, dic = {:?}", cfg.len(), cfg.dicritical_points());
    for (i, p) in cfg.points.iter().enumerate() {
        eprintln!(
            "p{}: parent={:?} prox={:?} nu={} eps={} pos={:?}",
            i + 1,
            p.parent.map(|x| x + 1),
            p.proximate_to.iter().map(|x| x + 1).collect::<Vec<_>>(),
            p.nu,
            p.eps,
            p.position
        );
    }
}
