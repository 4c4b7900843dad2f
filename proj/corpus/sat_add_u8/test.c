#include <stddef.h>
#include <stdint.h>
#include <stdio.h>
#include <stdlib.h>

void sat_add_u8(const uint8_t *a, const uint8_t *b, uint8_t *dst, size_t n);

static uint32_t seed = 99u;
static uint8_t next_byte(void)
{
    seed = seed * 1103515245u + 12345u;
    return (uint8_t)(seed >> 16);
}

int main(void)
{
    static const size_t sizes[] = {0, 1, 7, 8, 9, 15, 16, 31, 32, 33, 100, 255, 256, 1023, 4099};
    for (size_t s = 0; s < sizeof sizes / sizeof sizes[0]; s++) {
        size_t n = sizes[s];
        uint8_t *a = malloc(n + 1), *b = malloc(n + 1), *d = malloc(n + 16);
        for (size_t i = 0; i < n; i++) {
            a[i] = next_byte();
            b[i] = (i % 5 == 0) ? 255 : next_byte();
        }
        for (size_t i = 0; i < n + 16; i++)
            d[i] = 0xA5;
        sat_add_u8(a, b, d, n);
        for (size_t i = 0; i < n; i++) {
            unsigned want = (unsigned)a[i] + b[i];
            if (want > 255)
                want = 255;
            if (d[i] != want) {
                printf("n=%zu: dst[%zu] = %u, expected %u\n", n, i, d[i], want);
                return 1;
            }
        }
        for (size_t i = n; i < n + 16; i++) {
            if (d[i] != 0xA5) {
                printf("n=%zu: wrote past the end at %zu\n", n, i);
                return 1;
            }
        }
        free(a);
        free(b);
        free(d);
    }
    puts("ok");
    return 0;
}
