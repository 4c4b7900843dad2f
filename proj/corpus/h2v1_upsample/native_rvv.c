#include <riscv_vector.h>
#include <stddef.h>
#include <stdint.h>

void h2v1_upsample(const uint8_t *in, uint8_t *out, size_t width)
{
    out[0] = in[0];
    if (width == 1) {
        out[1] = in[0];
        return;
    }
    out[1] = (uint8_t)((in[0] * 3 + in[1] + 2) >> 2);
    size_t i = 1;
    size_t n = width - 2;
    while (n > 0) {
        size_t vl = __riscv_vsetvl_e8m1(n);
        vuint8m1_t s0 = __riscv_vle8_v_u8m1(in + i, vl);
        vuint8m1_t sm = __riscv_vle8_v_u8m1(in + i - 1, vl);
        vuint8m1_t sp = __riscv_vle8_v_u8m1(in + i + 1, vl);
        vuint16m2_t t = __riscv_vwmulu_vx_u16m2(s0, 3, vl);
        vuint16m2_t lo = __riscv_vadd_vx_u16m2(__riscv_vwaddu_wv_u16m2(t, sm, vl), 1, vl);
        vuint16m2_t hi = __riscv_vadd_vx_u16m2(__riscv_vwaddu_wv_u16m2(t, sp, vl), 2, vl);
        __riscv_vsse8_v_u8m1(out + 2 * i, 2, __riscv_vnsrl_wx_u8m1(lo, 2, vl), vl);
        __riscv_vsse8_v_u8m1(out + 2 * i + 1, 2, __riscv_vnsrl_wx_u8m1(hi, 2, vl), vl);
        i += vl;
        n -= vl;
    }
    out[2 * i] = (uint8_t)((in[i] * 3 + in[i - 1] + 1) >> 2);
    out[2 * i + 1] = in[i];
}
