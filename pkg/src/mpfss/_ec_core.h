/*
 * Short-Weierstrass curve arithmetic over prime fields of up to 256 bits.
 *
 * Field elements are kept in Montgomery form with 1..4 limbs of 64 bits.
 * The bodies live in _ec_impl.h and are instantiated per limb count, so
 * the same code serves P-256 and the 32-bit test curve.  Points are Jacobian internally; affine points cross the
 * boundary.  Nothing here is constant time.
 */
#ifndef MPFSS_EC_CORE_H
#define MPFSS_EC_CORE_H

#include <stdint.h>
#include <stdlib.h>
#include <string.h>

#define EC_MAXL 4
#define EC_WBITS 4
#define EC_WSIZE 16

typedef unsigned __int128 ec_u128;

typedef struct { uint64_t v[EC_MAXL]; } ec_fe;
typedef struct { uint64_t v[EC_MAXL]; } ec_sc;

typedef struct {
    int n;          /* limbs in use */
    int nwin;       /* 4-bit windows covering the group order */
    ec_fe p;
    ec_fe pm2;      /* p - 2, exponent for inversion */
    uint64_t pinv;  /* -p^-1 mod 2^64 */
    ec_fe one;      /* R mod p */
    ec_fe r2;       /* R^2 mod p */
    ec_fe a;        /* curve coefficient, Montgomery form */
    int a_m3;
} ec_curve;

typedef struct { ec_fe x, y; int inf; } ec_aff;
typedef struct { ec_fe X, Y, Z; } ec_jac;  /* Z == 0 is the identity */

#define EC_CAT2(a, b) a##_##b
#define EC_CAT(a, b) EC_CAT2(a, b)
#define EC_SFX(name) EC_CAT(name, EC_TAG)

/* fixed limb counts let the compiler unroll the field loops */
#define EC_TAG 1
#define EC_N 1
#include "_ec_impl.h"
#undef EC_TAG
#undef EC_N

#define EC_TAG 4
#define EC_N 4
#include "_ec_impl.h"
#undef EC_TAG
#undef EC_N

#define EC_TAG g
#define EC_N (c->n)
#include "_ec_impl.h"
#undef EC_TAG
#undef EC_N

#define EC_DISPATCH(name, ...)                        \
    switch (c->n) {                                   \
    case 1: return EC_CAT2(name, 1)(__VA_ARGS__);     \
    case 4: return EC_CAT2(name, 4)(__VA_ARGS__);     \
    default: return EC_CAT2(name, g)(__VA_ARGS__);    \
    }

static void ec_to_mont(const ec_curve *c, ec_fe *r, const ec_fe *a)
{
    EC_DISPATCH(fe_to_mont, c, r, a)
}

static void ec_from_mont(const ec_curve *c, ec_fe *r, const ec_fe *a)
{
    EC_DISPATCH(fe_from_mont, c, r, a)
}

static int ec_multi_mul(const ec_curve *c, ec_aff *out, long count,
                        const ec_aff *pts, const ec_sc *ks)
{
    ec_jac r;
    int rc;
    switch (c->n) {
    case 1:
        rc = ec_multi_mul_1(c, &r, count, pts, ks);
        return rc < 0 ? rc : jac_batch_to_aff_1(c, &r, out, 1);
    case 4:
        rc = ec_multi_mul_4(c, &r, count, pts, ks);
        return rc < 0 ? rc : jac_batch_to_aff_4(c, &r, out, 1);
    default:
        rc = ec_multi_mul_g(c, &r, count, pts, ks);
        return rc < 0 ? rc : jac_batch_to_aff_g(c, &r, out, 1);
    }
}

static int ec_grid_eval(const ec_curve *c, long ncols, long k, const ec_aff *bases,
                        long nrows, const ec_sc *sc, long npoints, ec_aff *out)
{
    EC_DISPATCH(ec_grid_eval, c, ncols, k, bases, nrows, sc, npoints, out)
}

static int ec_vec_add(const ec_curve *c, long count, const ec_aff *a, const ec_aff *b, ec_aff *out)
{
    EC_DISPATCH(ec_vec_add, c, count, a, b, out)
}

static int ec_progression(const ec_curve *c, const ec_aff *start, const ec_aff *step,
                          long count, ec_aff *out)
{
    EC_DISPATCH(ec_progression, c, start, step, count, out)
}

static int ec_add_aff(const ec_curve *c, const ec_aff *a, const ec_aff *b, ec_aff *out)
{
    return ec_vec_add(c, 1, a, b, out);
}

#endif
