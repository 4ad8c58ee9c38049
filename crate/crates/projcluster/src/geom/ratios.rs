use super::proj::{add, cross, dot, ratio, scale, Flag, Vec3};
use crate::arith::Rat;
use crate::{Error, Result};
use num_traits::Zero;

/// Cross-ratio `(x1−x2)(x3−x4)/((x1−x4)(x2−x3))` of four collinear points or four
/// concurrent lines, given by homogeneous coordinates.
pub fn cross_ratio(x1: &Vec3, x2: &Vec3, x3: &Vec3, x4: &Vec3) -> Result<Rat> {
    let base = cross(x1, x3);
    if base.iter().all(Zero::is_zero) {
        return Err(Error::Degenerate("coincident elements".into()));
    }
    let l = |a: &Vec3, b: &Vec3| {
        ratio(&cross(a, b), &base).map_err(|_| Error::Degenerate("elements are not in one pencil".into()))
    };
    let (d12, d34, d14, d23) = (l(x1, x2)?, l(x3, x4)?, l(x1, x4)?, l(x2, x3)?);
    if d14.is_zero() || d23.is_zero() {
        return Err(Error::Degenerate("cross-ratio has a pole".into()));
    }
    Ok(d12 * d34 / (d14 * d23))
}

/// The element `x4` of the pencil spanned by `x1, x3` with `cross_ratio(x1,x2,x3,x4) = z`.
pub fn fourth_with_cross_ratio(x1: &Vec3, x2: &Vec3, x3: &Vec3, z: &Rat) -> Result<Vec3> {
    let base = cross(x1, x3);
    if base.iter().all(Zero::is_zero) {
        return Err(Error::Degenerate("coincident elements".into()));
    }
    // x2 = μ x1 + ν x3; with x1 ↦ ∞, x3 ↦ 0, x2 ↦ −1 the parameter z is −zμ x1 + ν x3.
    let mu = ratio(&cross(x2, x3), &base)?;
    let nu = ratio(&cross(x1, x2), &base)?;
    Ok(add(&scale(x1, &(-(z * &mu))), &scale(x3, &nu)))
}

/// Triple ratio `f_a(B) f_b(C) f_c(A) / (f_a(C) f_b(A) f_c(B))` of flags `(A,a), (B,b), (C,c)`.
pub fn triple_ratio(f1: &Flag, f2: &Flag, f3: &Flag) -> Result<Rat> {
    let (a, b, c) = (&f1.line, &f2.line, &f3.line);
    let (pa, pb, pc) = (&f1.point, &f2.point, &f3.point);
    let den = dot(a, pc) * dot(b, pa) * dot(c, pb);
    if den.is_zero() {
        return Err(Error::Degenerate("flags are not in general position".into()));
    }
    let num = dot(a, pb) * dot(b, pc) * dot(c, pa);
    if num.is_zero() {
        return Err(Error::Degenerate("flags are not in general position".into()));
    }
    Ok(num / den)
}

/// Triple ratio as the cross-ratio of the lines `a, AB, A(b∩c), AC` through `A`.
pub fn triple_ratio_by_lines(f1: &Flag, f2: &Flag, f3: &Flag) -> Result<Rat> {
    let a = &f1.point;
    let bc = cross(&f2.line, &f3.line);
    cross_ratio(&f1.line, &cross(a, &f2.point), &cross(a, &bc), &cross(a, &f3.point))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::geom::proj::v3;

    fn on_line(t: i64) -> Vec3 {
        v3(t, 2 * t + 1, 1)
    }

    #[test]
    fn affine_parameters() {
        let inf = v3(1, 2, 0);
        let x = cross_ratio(&inf, &on_line(-1), &on_line(0), &on_line(5)).unwrap();
        assert_eq!(x, rat(5, 1));
        let y = cross_ratio(&on_line(0), &on_line(1), &on_line(2), &on_line(3)).unwrap();
        assert_eq!(y, rat(1, 3));
        let p = fourth_with_cross_ratio(&on_line(0), &on_line(1), &on_line(2), &rat(1, 3)).unwrap();
        assert!(crate::geom::proj::proportional(&p, &on_line(3)));
    }

    #[test]
    fn canonical_frame() {
        for x in [rat(1, 1), rat(3, 7), rat(-5, 2)] {
            let one = Rat::from_integer(1.into());
            let a = Flag::new(v3(1, -1, 1), [one.clone(), &one + &x, x.clone()]).unwrap();
            let b = Flag::new(v3(0, 0, 1), v3(1, 0, 0)).unwrap();
            let c = Flag::new(v3(1, 0, 0), v3(0, 0, 1)).unwrap();
            assert_eq!(triple_ratio(&a, &b, &c).unwrap(), x);
            assert_eq!(triple_ratio_by_lines(&a, &b, &c).unwrap(), x);
        }
    }

    #[test]
    fn ceva_and_menelaus() {
        // Side lines of a triangle carrying their midpoints; the cevians are the medians.
        let (p, q, r) = (v3(0, 0, 1), v3(2, 0, 1), v3(0, 2, 1));
        let f = |y: &Vec3, z: &Vec3| Flag::new(add(y, z), cross(y, z)).unwrap();
        let ceva = triple_ratio(&f(&q, &r), &f(&r, &p), &f(&p, &q)).unwrap();
        assert_eq!(ceva, rat(1, 1));
        let m = [v3(1, 0, 1), v3(0, 1, 1), v3(3, -2, 1)];
        let sides = [cross(&q, &r), cross(&r, &p), cross(&p, &q)];
        let pts: Vec<Vec3> = sides.iter().map(|s| cross(s, &cross(&m[0], &m[1]))).collect();
        let fl: Vec<Flag> = (0..3).map(|i| Flag::new(pts[i].clone(), sides[i].clone()).unwrap()).collect();
        assert_eq!(triple_ratio(&fl[0], &fl[1], &fl[2]).unwrap(), rat(-1, 1));
    }
}
