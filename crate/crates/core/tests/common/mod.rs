#![allow(dead_code)]

use std::sync::Arc;

use genset::field::{FqContext, MatFq};
use genset::group::{Element, SymmetricSet};
use genset::marking::mat_pow;
use genset::perm::Permutation;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_perm<R: Rng>(rng: &mut R, n: usize) -> Permutation {
    let mut v: Vec<u32> = (0..n as u32).collect();
    v.shuffle(rng);
    Permutation::from_images(v).unwrap()
}

pub fn random_gl<R: Rng>(rng: &mut R, ctx: &Arc<FqContext>, n: usize) -> MatFq {
    loop {
        let data: Vec<u32> = (0..n * n).map(|_| rng.gen_range(0..ctx.q())).collect();
        let m = MatFq::new(ctx, n, data).unwrap();
        if m.det() != 0 {
            return m;
        }
    }
}

pub fn random_sl<R: Rng>(rng: &mut R, ctx: &Arc<FqContext>, n: usize) -> MatFq {
    let m = random_gl(rng, ctx, n);
    let d = ctx.inv(m.det()).unwrap();
    let mut data = m.entries().to_vec();
    for x in data.iter_mut().take(n) {
        *x = ctx.mul(*x, d);
    }
    MatFq::new(ctx, n, data).unwrap()
}

pub fn symmetric<T: Into<Element>>(elems: Vec<T>) -> SymmetricSet {
    SymmetricSet::symmetrize(elems.into_iter().map(Into::into).collect()).unwrap()
}

pub fn cycle(n: usize, points: &[u32]) -> Permutation {
    Permutation::from_cycles(n, &[points]).unwrap()
}

/// `x`, whose powers span `F_q` over `F_p`.
fn field_gen(ctx: &FqContext) -> u32 {
    if ctx.e() > 1 {
        ctx.p()
    } else {
        1
    }
}

fn transvections(ctx: &Arc<FqContext>, n: usize, keep: impl Fn(usize, usize) -> bool) -> Vec<MatFq> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && keep(i, j) {
                out.push(MatFq::elementary(ctx, n, i, j, 1));
                if ctx.e() > 1 {
                    out.push(MatFq::elementary(ctx, n, i, j, field_gen(ctx)));
                }
            }
        }
    }
    out
}

fn torus(ctx: &Arc<FqContext>, n: usize) -> MatFq {
    let g = ctx.primitive_element();
    let mut d = vec![1; n];
    d[0] = g;
    d[1] = ctx.inv(g).unwrap();
    MatFq::diag(ctx, &d)
}

/// Stabilizer of the line through `e_1`.
pub fn parabolic(ctx: &Arc<FqContext>, n: usize) -> Vec<MatFq> {
    let mut g = transvections(ctx, n, |i, j| !(j == 0 && i > 0));
    g.push(torus(ctx, n));
    g
}

/// Monomial matrices of determinant 1.
pub fn monomial(ctx: &Arc<FqContext>, n: usize) -> Vec<MatFq> {
    let fix_det = |m: MatFq| {
        let d = ctx.inv(m.det()).unwrap();
        let mut data = m.entries().to_vec();
        for x in data.iter_mut().take(n) {
            *x = ctx.mul(*x, d);
        }
        MatFq::new(ctx, n, data).unwrap()
    };
    let cyc: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let mut swap: Vec<usize> = (0..n).collect();
    swap.swap(0, 1);
    vec![
        fix_det(MatFq::permutation(ctx, &cyc)),
        fix_det(MatFq::permutation(ctx, &swap)),
        torus(ctx, n),
    ]
}

/// `SL(n, p)` inside `SL(n, q)`.
pub fn subfield(ctx: &Arc<FqContext>, n: usize) -> Vec<MatFq> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(MatFq::elementary(ctx, n, i, j, 1));
            }
        }
    }
    out
}

/// Image of `SL(2, q)` under the adjoint action on trace-zero matrices,
/// in the basis `E, H, F`.
pub fn adjoint_sl2(ctx: &Arc<FqContext>) -> Vec<MatFq> {
    let ad = |a: &MatFq| {
        let inv = a.mat_inv().unwrap();
        let basis = [[0, 1, 0, 0], [1, 0, 0, ctx.neg(1)], [0, 0, 1, 0]];
        let mut cols = Vec::new();
        for b in basis {
            let x = MatFq::new(ctx, 2, b.to_vec()).unwrap();
            let y = a.mat_mul(&x).unwrap().mat_mul(&inv).unwrap();
            // [[h, e], [f, -h]] -> (e, h, f)
            cols.push([y.get(0, 1), y.get(0, 0), y.get(1, 0)]);
        }
        let data = (0..3).flat_map(|r| cols.iter().map(move |c| c[r])).collect();
        MatFq::new(ctx, 3, data).unwrap()
    };
    let x = field_gen(ctx);
    let mut gens = vec![
        MatFq::elementary(ctx, 2, 0, 1, 1),
        MatFq::elementary(ctx, 2, 1, 0, 1),
        MatFq::elementary(ctx, 2, 0, 1, x),
    ];
    gens.push(torus(ctx, 2));
    gens.iter().map(ad).filter(|m| m.det() == 1).collect()
}

/// `Sp(4, q)` for the form with Gram matrix `[[0, I], [-I, 0]]`, from
/// symplectic transvections `v -> v + omega(v, u) u`.
pub fn symplectic4(ctx: &Arc<FqContext>) -> Vec<MatFq> {
    let omega = |v: &[u32], u: &[u32]| {
        let mut s = 0;
        for i in 0..2 {
            s = ctx.add(s, ctx.mul(v[i], u[i + 2]));
            s = ctx.sub(s, ctx.mul(v[i + 2], u[i]));
        }
        s
    };
    let us: [[u32; 4]; 6] = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 1, 0, 0], [1, 0, 0, 1]];
    us.iter()
        .map(|u| {
            let mut cols = Vec::new();
            for k in 0..4 {
                let mut v = [0u32; 4];
                v[k] = 1;
                let c = omega(&v, u);
                cols.push((0..4).map(|i| ctx.add(v[i], ctx.mul(c, u[i]))).collect::<Vec<_>>());
            }
            let data = (0..4).flat_map(|r| cols.iter().map(move |c| c[r])).collect();
            MatFq::new(ctx, 4, data).unwrap()
        })
        .collect()
}

/// `Gamma L(1, q^3) cap SL(3, q)`: multiplication by norm-one elements of
/// `F_{q^3}` and a Frobenius twisted to determinant 1.
fn gammal1_impl(ctx: &Arc<FqContext>, full: bool) -> Vec<MatFq> {
    let q = ctx.q();
    // x^3 = c0 + c1 x + c2 x^2 irreducible: no roots in F_q
    let (c0, c1, c2) = (1..q)
        .flat_map(|c0| (0..q).flat_map(move |c1| (0..q).map(move |c2| (c0, c1, c2))))
        .find(|&(c0, c1, c2)| {
            (0..q).all(|x| {
                let x2 = ctx.mul(x, x);
                let rhs = ctx.add(c0, ctx.add(ctx.mul(c1, x), ctx.mul(c2, x2)));
                ctx.mul(x2, x) != rhs
            })
        })
        .unwrap();
    let mul = |a: [u32; 3], b: [u32; 3]| {
        let mut t = [0u32; 5];
        for i in 0..3 {
            for j in 0..3 {
                t[i + j] = ctx.add(t[i + j], ctx.mul(a[i], b[j]));
            }
        }
        for k in (3..5).rev() {
            let c = t[k];
            t[k] = 0;
            t[k - 3] = ctx.add(t[k - 3], ctx.mul(c, c0));
            t[k - 2] = ctx.add(t[k - 2], ctx.mul(c, c1));
            t[k - 1] = ctx.add(t[k - 1], ctx.mul(c, c2));
        }
        [t[0], t[1], t[2]]
    };
    let basis = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let matrix_of = |f: &dyn Fn([u32; 3]) -> [u32; 3]| {
        let cols: Vec<[u32; 3]> = basis.iter().map(|&b| f(b)).collect();
        let data = (0..3).flat_map(|r| cols.iter().map(move |c| c[r])).collect();
        MatFq::new(ctx, 3, data).unwrap()
    };
    let pow = |a: [u32; 3], mut k: u64| {
        let (mut acc, mut base) = ([1, 0, 0], a);
        while k > 0 {
            if k & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            k >>= 1;
        }
        acc
    };
    let order = (q as u64).pow(3) - 1;
    let primes: Vec<u64> = (2..=order).filter(|&p| order.is_multiple_of(p) && genset::field::is_prime(p)).collect();
    let z = (0..q.pow(3))
        .map(|i| [i % q, (i / q) % q, i / (q * q)])
        .find(|&z| z != [0, 0, 0] && primes.iter().all(|&p| pow(z, order / p) != [1, 0, 0]))
        .unwrap();
    let mz = matrix_of(&|b| mul(z, b));
    let norm_one = mat_pow(&mz, q as u64 - 1);
    let frob = matrix_of(&|b| pow(b, q as u64));
    // det(m_z) = N(z) is primitive in F_q; correct det(frob) by a power of it
    let g = mz.det();
    let target = ctx.inv(frob.det()).unwrap();
    let k = (0..q as u64).find(|&k| ctx.pow(g, k) == target).unwrap();
    let twisted = frob.mat_mul(&mat_pow(&mz, k)).unwrap();
    if full {
        return vec![mz, frob];
    }
    vec![norm_one, twisted]
}

pub fn gammal1(ctx: &Arc<FqContext>) -> Vec<MatFq> {
    gammal1_impl(ctx, false)
}

/// All of `Gamma L(1, q^3)` inside `GL(3, q)`.
pub fn gammal1_full(ctx: &Arc<FqContext>) -> Vec<MatFq> {
    gammal1_impl(ctx, true)
}

/// Named proper-subgroup fixtures of `SL(n, q)`.
pub fn sl_fixtures(ctx: &Arc<FqContext>, n: usize) -> Vec<(&'static str, Vec<MatFq>)> {
    let mut out = vec![("parabolic", parabolic(ctx, n)), ("monomial", monomial(ctx, n))];
    if n == 3 {
        out.push(("gammal1", gammal1(ctx)));
        let so3 = adjoint_sl2(ctx);
        if !so3.is_empty() {
            out.push(("orthogonal", so3));
        }
    }
    if ctx.e() > 1 {
        out.push(("subfield", subfield(ctx, n)));
    }
    if n == 4 {
        out.push(("symplectic", symplectic4(ctx)));
    }
    out
}
