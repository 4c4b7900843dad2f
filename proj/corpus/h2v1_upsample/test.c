#include <stddef.h>
#include <stdint.h>
#include <stdio.h>
#include <stdlib.h>

void h2v1_upsample(const uint8_t *in, uint8_t *out, size_t width);

static void reference(const uint8_t *in, uint8_t *out, size_t width)
{
    for (size_t i = 0; i < width; i++) {
        unsigned left = i == 0 ? in[0] : in[i - 1];
        unsigned right = i + 1 == width ? in[i] : in[i + 1];
        out[2 * i] = i == 0 ? in[0] : (uint8_t)((in[i] * 3 + left + 1) >> 2);
        out[2 * i + 1] = i + 1 == width ? in[i] : (uint8_t)((in[i] * 3 + right + 2) >> 2);
    }
}

int main(void)
{
    static const size_t widths[] = {1, 2, 3, 8, 9, 10, 16, 17, 33, 100, 640, 1921};
    for (size_t s = 0; s < sizeof widths / sizeof widths[0]; s++) {
        size_t w = widths[s];
        uint8_t *in = malloc(w), *got = malloc(2 * w + 16), *want = malloc(2 * w);
        for (size_t i = 0; i < w; i++)
            in[i] = (uint8_t)((i * 73) ^ (i >> 2));
        for (size_t i = 0; i < 2 * w + 16; i++)
            got[i] = 0xEE;
        reference(in, want, w);
        h2v1_upsample(in, got, w);
        for (size_t i = 0; i < 2 * w; i++) {
            if (got[i] != want[i]) {
                printf("width=%zu: out[%zu] = %u, expected %u\n", w, i, got[i], want[i]);
                return 1;
            }
        }
        for (size_t i = 2 * w; i < 2 * w + 16; i++) {
            if (got[i] != 0xEE) {
                printf("width=%zu: wrote past the end at %zu\n", w, i);
                return 1;
            }
        }
        free(in);
        free(got);
        free(want);
    }
    puts("ok");
    return 0;
}
