#include <arm_neon.h>
#include <stddef.h>

void vec_add_f32(const float *a, const float *b, float *c, size_t n)
{
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        float32x4_t va = vld1q_f32(a + i);
        float32x4_t vb = vld1q_f32(b + i);
        vst1q_f32(c + i, vaddq_f32(va, vb));
    }
    for (; i < n; i++)
        c[i] = a[i] + b[i];
}
