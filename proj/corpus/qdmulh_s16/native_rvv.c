#include <riscv_vector.h>
#include <stddef.h>
#include <stdint.h>

void qdmulh_s16(const int16_t *a, const int16_t *b, int16_t *dst, size_t n)
{
    while (n > 0) {
        size_t vl = __riscv_vsetvl_e16m2(n);
        vint16m2_t va = __riscv_vle16_v_i16m2(a, vl);
        vint16m2_t vb = __riscv_vle16_v_i16m2(b, vl);
        // vsmul gives (a * b) >> 15 saturated; round-down matches the truncating Neon result
        vint16m2_t r = __riscv_vsmul_vv_i16m2(va, vb, __RISCV_VXRM_RDN, vl);
        __riscv_vse16_v_i16m2(dst, r, vl);
        a += vl;
        b += vl;
        dst += vl;
        n -= vl;
    }
}
