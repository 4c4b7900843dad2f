#include <riscv_vector.h>
#include <stddef.h>
#include <stdint.h>

int32_t max_s32(const int32_t *x, size_t n)
{
    vint32m1_t best = __riscv_vmv_s_x_i32m1(INT32_MIN, 1);
    while (n > 0) {
        size_t vl = __riscv_vsetvl_e32m4(n);
        vint32m4_t v = __riscv_vle32_v_i32m4(x, vl);
        best = __riscv_vredmax_vs_i32m4_i32m1(v, best, vl);
        x += vl;
        n -= vl;
    }
    return __riscv_vmv_x_s_i32m1_i32(best);
}
