#include <arm_neon.h>
#include <stddef.h>
#include <stdint.h>

// Splits n byte pairs (e.g. interleaved UV chroma) into two planes.
void deinterleave_u8(const uint8_t *src, uint8_t *even, uint8_t *odd, size_t n)
{
    size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        uint8x16x2_t p = vld2q_u8(src + 2 * i);
        vst1q_u8(even + i, p.val[0]);
        vst1q_u8(odd + i, p.val[1]);
    }
    for (; i < n; i++) {
        even[i] = src[2 * i];
        odd[i] = src[2 * i + 1];
    }
}
