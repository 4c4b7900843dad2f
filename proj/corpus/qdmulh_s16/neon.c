#include <arm_neon.h>
#include <stddef.h>
#include <stdint.h>

/* Q15 multiply: saturate((2 * a * b) >> 16), truncating. */
void qdmulh_s16(const int16_t *a, const int16_t *b, int16_t *dst, size_t n)
{
    size_t i = 0;
    for (; i + 8 <= n; i += 8)
        vst1q_s16(dst + i, vqdmulhq_s16(vld1q_s16(a + i), vld1q_s16(b + i)));
    for (; i < n; i++) {
        int32_t p = 2 * (int32_t)a[i] * b[i];
        if (a[i] == INT16_MIN && b[i] == INT16_MIN)
            dst[i] = INT16_MAX;
        else
            dst[i] = (int16_t)(p >> 16);
    }
}
