#include <math.h>
#include <stddef.h>
#include <stdint.h>
#include <stdio.h>
#include <stdlib.h>

float dot_f32(const float *a, const float *b, size_t n);

static uint32_t seed = 7u;
static float next_float(void)
{
    seed = seed * 1664525u + 1013904223u;
    return (float)((int32_t)(seed >> 9) - (1 << 22)) / (float)(1 << 22);
}

int main(void)
{
    static const size_t sizes[] = {0, 1, 2, 3, 4, 7, 8, 9, 16, 33, 100, 1000, 4097};
    for (size_t s = 0; s < sizeof sizes / sizeof sizes[0]; s++) {
        size_t n = sizes[s];
        float *a = malloc((n + 1) * sizeof(float));
        float *b = malloc((n + 1) * sizeof(float));
        double want = 0.0, scale = 0.0;
        for (size_t i = 0; i < n; i++) {
            a[i] = next_float();
            b[i] = next_float();
            want += (double)a[i] * b[i];
            scale += fabs((double)a[i] * b[i]);
        }
        float got = dot_f32(a, b, n);
        // summation order is free; allow float rounding relative to the magnitude sum
        double tol = 1e-5 * scale + 1e-6;
        if (!(fabs(got - want) <= tol)) {
            printf("n=%zu: got %.9g, expected %.9g (tolerance %.3g)\n", n, got, want, tol);
            return 1;
        }
        free(a);
        free(b);
    }
    puts("ok");
    return 0;
}
