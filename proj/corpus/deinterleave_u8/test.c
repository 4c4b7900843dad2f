#include <stddef.h>
#include <stdint.h>
#include <stdio.h>
#include <stdlib.h>

void deinterleave_u8(const uint8_t *src, uint8_t *even, uint8_t *odd, size_t n);

int main(void)
{
    static const size_t sizes[] = {0, 1, 2, 15, 16, 17, 32, 33, 127, 128, 129, 1000};
    for (size_t s = 0; s < sizeof sizes / sizeof sizes[0]; s++) {
        size_t n = sizes[s];
        uint8_t *src = malloc(2 * n + 1);
        uint8_t *e = malloc(n + 16), *o = malloc(n + 16);
        for (size_t i = 0; i < 2 * n; i++)
            src[i] = (uint8_t)(i * 37 + 11);
        for (size_t i = 0; i < n + 16; i++)
            e[i] = o[i] = 0x5A;
        deinterleave_u8(src, e, o, n);
        for (size_t i = 0; i < n; i++) {
            if (e[i] != src[2 * i] || o[i] != src[2 * i + 1]) {
                printf("n=%zu: pair %zu = (%u, %u), expected (%u, %u)\n", n, i, e[i], o[i], src[2 * i],
                       src[2 * i + 1]);
                return 1;
            }
        }
        for (size_t i = n; i < n + 16; i++) {
            if (e[i] != 0x5A || o[i] != 0x5A) {
                printf("n=%zu: wrote past the end at %zu\n", n, i);
                return 1;
            }
        }
        free(src);
        free(e);
        free(o);
    }
    puts("ok");
    return 0;
}
