#include <arm_neon.h>
#include <stddef.h>
#include <stdint.h>

/* Largest element; INT32_MIN for an empty array. */
int32_t max_s32(const int32_t *x, size_t n)
{
    int32x4_t m = vdupq_n_s32(INT32_MIN);
    size_t i = 0;
    for (; i + 4 <= n; i += 4)
        m = vmaxq_s32(m, vld1q_s32(x + i));
    int32_t best = vmaxvq_s32(m);
    for (; i < n; i++)
        if (x[i] > best)
            best = x[i];
    return best;
}
