#include <arm_neon.h>
#include <stddef.h>

float dot_f32(const float *a, const float *b, size_t n)
{
    float32x4_t acc0 = vdupq_n_f32(0.0f);
    float32x4_t acc1 = vdupq_n_f32(0.0f);
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = vmlaq_f32(acc0, vld1q_f32(a + i), vld1q_f32(b + i));
        acc1 = vmlaq_f32(acc1, vld1q_f32(a + i + 4), vld1q_f32(b + i + 4));
    }
    float32x4_t acc = vaddq_f32(acc0, acc1);
    float32x2_t half = vadd_f32(vget_low_f32(acc), vget_high_f32(acc));
    float sum = vget_lane_f32(vpadd_f32(half, half), 0);
    for (; i < n; i++)
        sum += a[i] * b[i];
    return sum;
}
