#include <riscv_vector.h>
#include <stddef.h>
#include <stdint.h>

void deinterleave_u8(const uint8_t *src, uint8_t *even, uint8_t *odd, size_t n)
{
    while (n > 0) {
        size_t vl = __riscv_vsetvl_e8m2(n);
        vuint8m2x2_t p = __riscv_vlseg2e8_v_u8m2x2(src, vl);
        __riscv_vse8_v_u8m2(even, __riscv_vget_v_u8m2x2_u8m2(p, 0), vl);
        __riscv_vse8_v_u8m2(odd, __riscv_vget_v_u8m2x2_u8m2(p, 1), vl);
        src += 2 * vl;
        even += vl;
        odd += vl;
        n -= vl;
    }
}
