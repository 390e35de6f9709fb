/* Field and point routines, instantiated per limb count by _ec_core.h. */

/* ------------------------------------------------------------------ */
/* field                                                              */

static inline int EC_SFX(fe_is_zero)(const ec_curve *c, const ec_fe *a)
{
    uint64_t acc = 0;
    for (int i = 0; i < EC_N; i++) acc |= a->v[i];
    return acc == 0;
}

static inline int EC_SFX(fe_eq)(const ec_curve *c, const ec_fe *a, const ec_fe *b)
{
    uint64_t acc = 0;
    for (int i = 0; i < EC_N; i++) acc |= a->v[i] ^ b->v[i];
    return acc == 0;
}

static inline int EC_SFX(fe_lt_p)(const ec_curve *c, const ec_fe *a)
{
    for (int i = EC_N - 1; i >= 0; i--) {
        if (a->v[i] < c->p.v[i]) return 1;
        if (a->v[i] > c->p.v[i]) return 0;
    }
    return 0;
}

static inline void EC_SFX(fe_sub_p)(const ec_curve *c, ec_fe *a)
{
    uint64_t borrow = 0;
    for (int i = 0; i < EC_N; i++) {
        ec_u128 d = (ec_u128)a->v[i] - c->p.v[i] - borrow;
        a->v[i] = (uint64_t)d;
        borrow = (uint64_t)(d >> 64) & 1;
    }
}

static inline void EC_SFX(fe_add)(const ec_curve *c, ec_fe *r, const ec_fe *a, const ec_fe *b)
{
    ec_fe t = {{0}};
    uint64_t carry = 0;
    for (int i = 0; i < EC_N; i++) {
        ec_u128 s = (ec_u128)a->v[i] + b->v[i] + carry;
        t.v[i] = (uint64_t)s;
        carry = (uint64_t)(s >> 64);
    }
    if (carry || !EC_SFX(fe_lt_p)(c, &t)) EC_SFX(fe_sub_p)(c, &t);
    *r = t;
}

static inline void EC_SFX(fe_sub)(const ec_curve *c, ec_fe *r, const ec_fe *a, const ec_fe *b)
{
    ec_fe t = {{0}};
    uint64_t borrow = 0;
    for (int i = 0; i < EC_N; i++) {
        ec_u128 d = (ec_u128)a->v[i] - b->v[i] - borrow;
        t.v[i] = (uint64_t)d;
        borrow = (uint64_t)(d >> 64) & 1;
    }
    if (borrow) {
        uint64_t carry = 0;
        for (int i = 0; i < EC_N; i++) {
            ec_u128 s = (ec_u128)t.v[i] + c->p.v[i] + carry;
            t.v[i] = (uint64_t)s;
            carry = (uint64_t)(s >> 64);
        }
    }
    *r = t;
}

/* CIOS Montgomery multiplication: r = a * b / R mod p */
static inline void EC_SFX(fe_mul)(const ec_curve *c, ec_fe *r, const ec_fe *a, const ec_fe *b)
{
    const int n = EC_N;
    uint64_t t[EC_MAXL + 2] = {0};
    for (int i = 0; i < n; i++) {
        uint64_t C = 0;
        const uint64_t bi = b->v[i];
        ec_u128 s;
        for (int j = 0; j < n; j++) {
            s = (ec_u128)a->v[j] * bi + t[j] + C;
            t[j] = (uint64_t)s;
            C = (uint64_t)(s >> 64);
        }
        s = (ec_u128)t[n] + C;
        t[n] = (uint64_t)s;
        t[n + 1] = (uint64_t)(s >> 64);

        const uint64_t m = t[0] * c->pinv;
        s = (ec_u128)m * c->p.v[0] + t[0];
        C = (uint64_t)(s >> 64);
        for (int j = 1; j < n; j++) {
            s = (ec_u128)m * c->p.v[j] + t[j] + C;
            t[j - 1] = (uint64_t)s;
            C = (uint64_t)(s >> 64);
        }
        s = (ec_u128)t[n] + C;
        t[n - 1] = (uint64_t)s;
        t[n] = t[n + 1] + (uint64_t)(s >> 64);
    }
    ec_fe res = {{0}};
    for (int j = 0; j < n; j++) res.v[j] = t[j];
    if (t[n] || !EC_SFX(fe_lt_p)(c, &res)) EC_SFX(fe_sub_p)(c, &res);
    *r = res;
}

static inline void EC_SFX(fe_sqr)(const ec_curve *c, ec_fe *r, const ec_fe *a)
{
    EC_SFX(fe_mul)(c, r, a, a);
}

static void EC_SFX(fe_inv)(const ec_curve *c, ec_fe *r, const ec_fe *a)
{
    ec_fe acc = c->one;
    for (int i = EC_N * 64 - 1; i >= 0; i--) {
        EC_SFX(fe_sqr)(c, &acc, &acc);
        if ((c->pm2.v[i / 64] >> (i % 64)) & 1) EC_SFX(fe_mul)(c, &acc, &acc, a);
    }
    *r = acc;
}

static inline void EC_SFX(fe_to_mont)(const ec_curve *c, ec_fe *r, const ec_fe *a)
{
    EC_SFX(fe_mul)(c, r, a, &c->r2);
}

static inline void EC_SFX(fe_from_mont)(const ec_curve *c, ec_fe *r, const ec_fe *a)
{
    ec_fe unit = {{1, 0, 0, 0}};
    EC_SFX(fe_mul)(c, r, a, &unit);
}

/* ------------------------------------------------------------------ */
/* points                                                             */

static inline void EC_SFX(jac_set_inf)(const ec_curve *c, ec_jac *r)
{
    memset(r, 0, sizeof *r);
    r->X = c->one;
    r->Y = c->one;
}

static inline int EC_SFX(jac_is_inf)(const ec_curve *c, const ec_jac *p)
{
    return EC_SFX(fe_is_zero)(c, &p->Z);
}

static inline void EC_SFX(jac_from_aff)(const ec_curve *c, ec_jac *r, const ec_aff *a)
{
    if (a->inf) {
        EC_SFX(jac_set_inf)(c, r);
        return;
    }
    r->X = a->x;
    r->Y = a->y;
    r->Z = c->one;
}

/* dbl-2007-bl, with the a = -3 shortcut */
static void EC_SFX(jac_dbl)(const ec_curve *c, ec_jac *r, const ec_jac *p)
{
    if (EC_SFX(jac_is_inf)(c, p) || EC_SFX(fe_is_zero)(c, &p->Y)) {
        EC_SFX(jac_set_inf)(c, r);
        return;
    }
    ec_fe XX, YY, YYYY, ZZ, S, M, T, t1, t2, Z3;
    EC_SFX(fe_sqr)(c, &XX, &p->X);
    EC_SFX(fe_sqr)(c, &YY, &p->Y);
    EC_SFX(fe_sqr)(c, &YYYY, &YY);
    EC_SFX(fe_sqr)(c, &ZZ, &p->Z);

    EC_SFX(fe_add)(c, &t1, &p->X, &YY);
    EC_SFX(fe_sqr)(c, &t1, &t1);
    EC_SFX(fe_sub)(c, &t1, &t1, &XX);
    EC_SFX(fe_sub)(c, &t1, &t1, &YYYY);
    EC_SFX(fe_add)(c, &S, &t1, &t1);

    if (c->a_m3) {
        EC_SFX(fe_sub)(c, &t1, &p->X, &ZZ);
        EC_SFX(fe_add)(c, &t2, &p->X, &ZZ);
        EC_SFX(fe_mul)(c, &t1, &t1, &t2);
        EC_SFX(fe_add)(c, &M, &t1, &t1);
        EC_SFX(fe_add)(c, &M, &M, &t1);
    } else {
        EC_SFX(fe_add)(c, &M, &XX, &XX);
        EC_SFX(fe_add)(c, &M, &M, &XX);
        EC_SFX(fe_sqr)(c, &t1, &ZZ);
        EC_SFX(fe_mul)(c, &t1, &t1, &c->a);
        EC_SFX(fe_add)(c, &M, &M, &t1);
    }

    EC_SFX(fe_sqr)(c, &T, &M);
    EC_SFX(fe_sub)(c, &T, &T, &S);
    EC_SFX(fe_sub)(c, &T, &T, &S);

    EC_SFX(fe_add)(c, &Z3, &p->Y, &p->Z);
    EC_SFX(fe_sqr)(c, &Z3, &Z3);
    EC_SFX(fe_sub)(c, &Z3, &Z3, &YY);
    EC_SFX(fe_sub)(c, &Z3, &Z3, &ZZ);

    EC_SFX(fe_sub)(c, &t1, &S, &T);
    EC_SFX(fe_mul)(c, &t1, &M, &t1);
    EC_SFX(fe_add)(c, &t2, &YYYY, &YYYY);
    EC_SFX(fe_add)(c, &t2, &t2, &t2);
    EC_SFX(fe_add)(c, &t2, &t2, &t2);
    EC_SFX(fe_sub)(c, &r->Y, &t1, &t2);
    r->X = T;
    r->Z = Z3;
}

/* add-2007-bl */
static void EC_SFX(jac_add)(const ec_curve *c, ec_jac *r, const ec_jac *p, const ec_jac *q)
{
    if (EC_SFX(jac_is_inf)(c, p)) { *r = *q; return; }
    if (EC_SFX(jac_is_inf)(c, q)) { *r = *p; return; }
    ec_fe Z1Z1, Z2Z2, U1, U2, S1, S2, H, I, J, rr, V, t1, X3, Y3, Z3;
    EC_SFX(fe_sqr)(c, &Z1Z1, &p->Z);
    EC_SFX(fe_sqr)(c, &Z2Z2, &q->Z);
    EC_SFX(fe_mul)(c, &U1, &p->X, &Z2Z2);
    EC_SFX(fe_mul)(c, &U2, &q->X, &Z1Z1);
    EC_SFX(fe_mul)(c, &S1, &p->Y, &q->Z);
    EC_SFX(fe_mul)(c, &S1, &S1, &Z2Z2);
    EC_SFX(fe_mul)(c, &S2, &q->Y, &p->Z);
    EC_SFX(fe_mul)(c, &S2, &S2, &Z1Z1);
    EC_SFX(fe_sub)(c, &H, &U2, &U1);
    EC_SFX(fe_sub)(c, &rr, &S2, &S1);
    if (EC_SFX(fe_is_zero)(c, &H)) {
        if (EC_SFX(fe_is_zero)(c, &rr)) EC_SFX(jac_dbl)(c, r, p);
        else EC_SFX(jac_set_inf)(c, r);
        return;
    }
    EC_SFX(fe_add)(c, &I, &H, &H);
    EC_SFX(fe_sqr)(c, &I, &I);
    EC_SFX(fe_mul)(c, &J, &H, &I);
    EC_SFX(fe_add)(c, &rr, &rr, &rr);
    EC_SFX(fe_mul)(c, &V, &U1, &I);

    EC_SFX(fe_sqr)(c, &X3, &rr);
    EC_SFX(fe_sub)(c, &X3, &X3, &J);
    EC_SFX(fe_sub)(c, &X3, &X3, &V);
    EC_SFX(fe_sub)(c, &X3, &X3, &V);

    EC_SFX(fe_sub)(c, &t1, &V, &X3);
    EC_SFX(fe_mul)(c, &Y3, &rr, &t1);
    EC_SFX(fe_mul)(c, &t1, &S1, &J);
    EC_SFX(fe_add)(c, &t1, &t1, &t1);
    EC_SFX(fe_sub)(c, &Y3, &Y3, &t1);

    EC_SFX(fe_add)(c, &Z3, &p->Z, &q->Z);
    EC_SFX(fe_sqr)(c, &Z3, &Z3);
    EC_SFX(fe_sub)(c, &Z3, &Z3, &Z1Z1);
    EC_SFX(fe_sub)(c, &Z3, &Z3, &Z2Z2);
    EC_SFX(fe_mul)(c, &Z3, &Z3, &H);

    r->X = X3;
    r->Y = Y3;
    r->Z = Z3;
}

/* madd-2007-bl: q is affine */
static void EC_SFX(jac_madd)(const ec_curve *c, ec_jac *r, const ec_jac *p, const ec_aff *q)
{
    if (q->inf) { *r = *p; return; }
    if (EC_SFX(jac_is_inf)(c, p)) { EC_SFX(jac_from_aff)(c, r, q); return; }
    ec_fe Z1Z1, U2, S2, H, HH, I, J, rr, V, t1, X3, Y3, Z3;
    EC_SFX(fe_sqr)(c, &Z1Z1, &p->Z);
    EC_SFX(fe_mul)(c, &U2, &q->x, &Z1Z1);
    EC_SFX(fe_mul)(c, &S2, &q->y, &p->Z);
    EC_SFX(fe_mul)(c, &S2, &S2, &Z1Z1);
    EC_SFX(fe_sub)(c, &H, &U2, &p->X);
    EC_SFX(fe_sub)(c, &rr, &S2, &p->Y);
    if (EC_SFX(fe_is_zero)(c, &H)) {
        if (EC_SFX(fe_is_zero)(c, &rr)) EC_SFX(jac_dbl)(c, r, p);
        else EC_SFX(jac_set_inf)(c, r);
        return;
    }
    EC_SFX(fe_sqr)(c, &HH, &H);
    EC_SFX(fe_add)(c, &I, &HH, &HH);
    EC_SFX(fe_add)(c, &I, &I, &I);
    EC_SFX(fe_mul)(c, &J, &H, &I);
    EC_SFX(fe_add)(c, &rr, &rr, &rr);
    EC_SFX(fe_mul)(c, &V, &p->X, &I);

    EC_SFX(fe_sqr)(c, &X3, &rr);
    EC_SFX(fe_sub)(c, &X3, &X3, &J);
    EC_SFX(fe_sub)(c, &X3, &X3, &V);
    EC_SFX(fe_sub)(c, &X3, &X3, &V);

    EC_SFX(fe_sub)(c, &t1, &V, &X3);
    EC_SFX(fe_mul)(c, &Y3, &rr, &t1);
    EC_SFX(fe_mul)(c, &t1, &p->Y, &J);
    EC_SFX(fe_add)(c, &t1, &t1, &t1);
    EC_SFX(fe_sub)(c, &Y3, &Y3, &t1);

    EC_SFX(fe_add)(c, &Z3, &p->Z, &H);
    EC_SFX(fe_sqr)(c, &Z3, &Z3);
    EC_SFX(fe_sub)(c, &Z3, &Z3, &Z1Z1);
    EC_SFX(fe_sub)(c, &Z3, &Z3, &HH);

    r->X = X3;
    r->Y = Y3;
    r->Z = Z3;
}

/* Montgomery's trick: one inversion for the whole batch. */
static int EC_SFX(jac_batch_to_aff)(const ec_curve *c, const ec_jac *in, ec_aff *out, long count)
{
    if (count <= 0) return 0;
    ec_fe *prefix = (ec_fe *)malloc(sizeof(ec_fe) * (size_t)count);
    if (!prefix) return -1;
    ec_fe acc = c->one;
    for (long i = 0; i < count; i++) {
        prefix[i] = acc;
        if (!EC_SFX(jac_is_inf)(c, &in[i])) EC_SFX(fe_mul)(c, &acc, &acc, &in[i].Z);
    }
    ec_fe inv;
    EC_SFX(fe_inv)(c, &inv, &acc);
    for (long i = count - 1; i >= 0; i--) {
        if (EC_SFX(jac_is_inf)(c, &in[i])) {
            memset(&out[i], 0, sizeof out[i]);
            out[i].inf = 1;
            continue;
        }
        ec_fe zinv, z2, z3;
        EC_SFX(fe_mul)(c, &zinv, &inv, &prefix[i]);
        EC_SFX(fe_mul)(c, &inv, &inv, &in[i].Z);
        EC_SFX(fe_sqr)(c, &z2, &zinv);
        EC_SFX(fe_mul)(c, &z3, &z2, &zinv);
        EC_SFX(fe_mul)(c, &out[i].x, &in[i].X, &z2);
        EC_SFX(fe_mul)(c, &out[i].y, &in[i].Y, &z3);
        out[i].inf = 0;
    }
    free(prefix);
    return 0;
}

static inline int EC_SFX(sc_digit)(const ec_sc *k, int w)
{
    int bit = w * EC_WBITS;
    return (int)((k->v[bit / 64] >> (bit % 64)) & (EC_WSIZE - 1));
}

/* tab[d - 1] = d * P for d in 1..15, affine */
static int EC_SFX(aff_small_multiples)(const ec_curve *c, const ec_aff *P, ec_aff *tab)
{
    ec_jac tmp[EC_WSIZE - 1];
    EC_SFX(jac_from_aff)(c, &tmp[0], P);
    for (int d = 1; d < EC_WSIZE - 1; d++) EC_SFX(jac_madd)(c, &tmp[d], &tmp[d - 1], P);
    return EC_SFX(jac_batch_to_aff)(c, tmp, tab, EC_WSIZE - 1);
}

/* sum_i k_i * P_i, interleaved fixed 4-bit windows (Straus) */
static int EC_SFX(ec_multi_mul)(const ec_curve *c, ec_jac *out, long count,
                        const ec_aff *pts, const ec_sc *ks)
{
    EC_SFX(jac_set_inf)(c, out);
    if (count <= 0) return 0;
    ec_aff *tabs = (ec_aff *)malloc(sizeof(ec_aff) * (size_t)count * (EC_WSIZE - 1));
    if (!tabs) return -1;
    for (long i = 0; i < count; i++) {
        if (EC_SFX(aff_small_multiples)(c, &pts[i], &tabs[i * (EC_WSIZE - 1)]) < 0) {
            free(tabs);
            return -1;
        }
    }
    ec_jac R;
    EC_SFX(jac_set_inf)(c, &R);
    for (int w = c->nwin - 1; w >= 0; w--) {
        for (int s = 0; s < EC_WBITS; s++) EC_SFX(jac_dbl)(c, &R, &R);
        for (long i = 0; i < count; i++) {
            int d = EC_SFX(sc_digit)(&ks[i], w);
            if (d) EC_SFX(jac_madd)(c, &R, &R, &tabs[i * (EC_WSIZE - 1) + d - 1]);
        }
    }
    *out = R;
    free(tabs);
    return 0;
}

/*
 * Evaluate prod_j base[col][j] ^ sc[row][j] for x = row * ncols + col,
 * x < npoints.  With many rows each base is expanded once into a full
 * comb table so every exponentiation costs only additions.
 */
static int EC_SFX(ec_grid_eval)(const ec_curve *c, long ncols, long k, const ec_aff *bases,
                        long nrows, const ec_sc *sc, long npoints, ec_aff *out)
{
    if (npoints <= 0) return 0;
    const long nb = ncols * k;
    const long per = (long)c->nwin * (EC_WSIZE - 1);
    const int comb = nrows >= 8 && nb * per <= (1L << 22);
    ec_jac *acc = (ec_jac *)malloc(sizeof(ec_jac) * (size_t)npoints);
    if (!acc) return -1;

    if (comb) {
        ec_jac *tmp = (ec_jac *)malloc(sizeof(ec_jac) * (size_t)(nb * per));
        ec_aff *tab = (ec_aff *)malloc(sizeof(ec_aff) * (size_t)(nb * per));
        if (!tmp || !tab) {
            free(tmp); free(tab); free(acc);
            return -1;
        }
        for (long b = 0; b < nb; b++) {
            ec_jac *t = &tmp[b * per];
            ec_jac step;
            EC_SFX(jac_from_aff)(c, &step, &bases[b]);
            for (int w = 0; w < c->nwin; w++) {
                ec_jac *row = &t[w * (EC_WSIZE - 1)];
                row[0] = step;
                for (int d = 1; d < EC_WSIZE - 1; d++) EC_SFX(jac_add)(c, &row[d], &row[d - 1], &step);
                EC_SFX(jac_add)(c, &step, &row[EC_WSIZE - 2], &step);
            }
        }
        if (EC_SFX(jac_batch_to_aff)(c, tmp, tab, nb * per) < 0) {
            free(tmp); free(tab); free(acc);
            return -1;
        }
        free(tmp);
        for (long x = 0; x < npoints; x++) {
            const long row = x / ncols, col = x % ncols;
            ec_jac R;
            EC_SFX(jac_set_inf)(c, &R);
            for (long j = 0; j < k; j++) {
                const ec_aff *t = &tab[(col * k + j) * per];
                const ec_sc *s = &sc[row * k + j];
                for (int w = 0; w < c->nwin; w++) {
                    int d = EC_SFX(sc_digit)(s, w);
                    if (d) EC_SFX(jac_madd)(c, &R, &R, &t[w * (EC_WSIZE - 1) + d - 1]);
                }
            }
            acc[x] = R;
        }
        free(tab);
    } else {
        ec_aff *tabs = (ec_aff *)malloc(sizeof(ec_aff) * (size_t)nb * (EC_WSIZE - 1));
        if (!tabs) { free(acc); return -1; }
        for (long b = 0; b < nb; b++) {
            if (EC_SFX(aff_small_multiples)(c, &bases[b], &tabs[b * (EC_WSIZE - 1)]) < 0) {
                free(tabs); free(acc);
                return -1;
            }
        }
        for (long x = 0; x < npoints; x++) {
            const long row = x / ncols, col = x % ncols;
            ec_jac R;
            EC_SFX(jac_set_inf)(c, &R);
            for (int w = c->nwin - 1; w >= 0; w--) {
                for (int s = 0; s < EC_WBITS; s++) EC_SFX(jac_dbl)(c, &R, &R);
                for (long j = 0; j < k; j++) {
                    int d = EC_SFX(sc_digit)(&sc[row * k + j], w);
                    if (d) EC_SFX(jac_madd)(c, &R, &R, &tabs[(col * k + j) * (EC_WSIZE - 1) + d - 1]);
                }
            }
            acc[x] = R;
        }
        free(tabs);
    }
    int rc = EC_SFX(jac_batch_to_aff)(c, acc, out, npoints);
    free(acc);
    return rc;
}

static int EC_SFX(ec_vec_add)(const ec_curve *c, long count, const ec_aff *a, const ec_aff *b, ec_aff *out)
{
    if (count <= 0) return 0;
    ec_jac *acc = (ec_jac *)malloc(sizeof(ec_jac) * (size_t)count);
    if (!acc) return -1;
    for (long i = 0; i < count; i++) {
        EC_SFX(jac_from_aff)(c, &acc[i], &a[i]);
        EC_SFX(jac_madd)(c, &acc[i], &acc[i], &b[i]);
    }
    int rc = EC_SFX(jac_batch_to_aff)(c, acc, out, count);
    free(acc);
    return rc;
}

/* out[j] = start + j * step */
static int EC_SFX(ec_progression)(const ec_curve *c, const ec_aff *start, const ec_aff *step,
                          long count, ec_aff *out)
{
    if (count <= 0) return 0;
    ec_jac *acc = (ec_jac *)malloc(sizeof(ec_jac) * (size_t)count);
    if (!acc) return -1;
    EC_SFX(jac_from_aff)(c, &acc[0], start);
    for (long j = 1; j < count; j++) EC_SFX(jac_madd)(c, &acc[j], &acc[j - 1], step);
    int rc = EC_SFX(jac_batch_to_aff)(c, acc, out, count);
    free(acc);
    return rc;
}

