#include <arm_neon.h>
#include <stddef.h>
#include <stdint.h>

// Fancy horizontal 2:1 chroma upsampling of one row:
//   out[2i]   = (3 * in[i] + in[i - 1] + 1) >> 2
//   out[2i+1] = (3 * in[i] + in[i + 1] + 2) >> 2
// with the edge samples replicated. width >= 1.
void h2v1_upsample(const uint8_t *in, uint8_t *out, size_t width)
{
    out[0] = in[0];
    if (width == 1) {
        out[1] = in[0];
        return;
    }
    out[1] = (uint8_t)((in[0] * 3 + in[1] + 2) >> 2);
    size_t i = 1;
    const uint8x8_t three = vdup_n_u8(3);
    for (; i + 8 < width; i += 8) {
        uint8x8_t s0 = vld1_u8(in + i);
        uint8x8_t sm = vld1_u8(in + i - 1);
        uint8x8_t sp = vld1_u8(in + i + 1);
        uint16x8_t t = vmull_u8(s0, three);
        uint8x8x2_t r;
        r.val[0] = vshrn_n_u16(vaddq_u16(vaddw_u8(t, sm), vdupq_n_u16(1)), 2);
        r.val[1] = vrshrn_n_u16(vaddw_u8(t, sp), 2);
        vst2_u8(out + 2 * i, r);
    }
    for (; i < width - 1; i++) {
        out[2 * i] = (uint8_t)((in[i] * 3 + in[i - 1] + 1) >> 2);
        out[2 * i + 1] = (uint8_t)((in[i] * 3 + in[i + 1] + 2) >> 2);
    }
    out[2 * i] = (uint8_t)((in[i] * 3 + in[i - 1] + 1) >> 2);
    out[2 * i + 1] = in[i];
}
