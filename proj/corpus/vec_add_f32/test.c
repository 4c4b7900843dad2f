#include <stddef.h>
#include <stdint.h>
#include <stdio.h>
#include <stdlib.h>

void vec_add_f32(const float *a, const float *b, float *c, size_t n);

static uint32_t seed = 12345u;
static float next_float(void)
{
    seed = seed * 1664525u + 1013904223u;
    return (float)((int32_t)(seed >> 8) - (1 << 23)) / 4096.0f;
}

int main(void)
{
    static const size_t sizes[] = {0, 1, 3, 4, 5, 7, 8, 15, 16, 17, 31, 63, 64, 65, 257, 1000};
    for (size_t s = 0; s < sizeof sizes / sizeof sizes[0]; s++) {
        size_t n = sizes[s];
        float *a = malloc((n + 1) * sizeof(float));
        float *b = malloc((n + 1) * sizeof(float));
        float *c = malloc((n + 8) * sizeof(float));
        for (size_t i = 0; i < n; i++) {
            a[i] = next_float();
            b[i] = next_float();
        }
        for (size_t i = 0; i < n + 8; i++)
            c[i] = -7.5f;
        vec_add_f32(a, b, c, n);
        for (size_t i = 0; i < n; i++) {
            if (c[i] != a[i] + b[i]) {
                printf("n=%zu: c[%zu] = %g, expected %g\n", n, i, c[i], a[i] + b[i]);
                return 1;
            }
        }
        for (size_t i = n; i < n + 8; i++) {
            if (c[i] != -7.5f) {
                printf("n=%zu: wrote past the end at %zu\n", n, i);
                return 1;
            }
        }
        free(a);
        free(b);
        free(c);
    }
    puts("ok");
    return 0;
}
