#include <stddef.h>
#include <stdint.h>
#include <stdio.h>
#include <stdlib.h>

void qdmulh_s16(const int16_t *a, const int16_t *b, int16_t *dst, size_t n);

static int16_t expected(int16_t x, int16_t y)
{
    int64_t p = 2 * (int64_t)x * y;
    if (p > INT32_MAX)
        return INT16_MAX;
    return (int16_t)(p >> 16);
}

static uint32_t seed = 31337u;
static int16_t next_short(void)
{
    seed = seed * 214013u + 2531011u;
    return (int16_t)(seed >> 16);
}

int main(void)
{
    static const size_t sizes[] = {0, 1, 5, 8, 9, 16, 23, 64, 100, 513};
    static const int16_t edge[] = {INT16_MIN, INT16_MIN + 1, -1, 0, 1, INT16_MAX};
    for (size_t s = 0; s < sizeof sizes / sizeof sizes[0]; s++) {
        size_t n = sizes[s];
        int16_t *a = malloc((n + 1) * 2), *b = malloc((n + 1) * 2), *d = malloc((n + 8) * 2);
        for (size_t i = 0; i < n; i++) {
            a[i] = (i % 7 == 0) ? edge[i % 6] : next_short();
            b[i] = (i % 3 == 0) ? edge[(i / 3) % 6] : next_short();
        }
        for (size_t i = 0; i < n + 8; i++)
            d[i] = 0x1234;
        qdmulh_s16(a, b, d, n);
        for (size_t i = 0; i < n; i++) {
            int16_t want = expected(a[i], b[i]);
            if (d[i] != want) {
                printf("n=%zu: %d * %d gave %d, expected %d\n", n, a[i], b[i], d[i], want);
                return 1;
            }
        }
        for (size_t i = n; i < n + 8; i++) {
            if (d[i] != 0x1234) {
                printf("n=%zu: wrote past the end at %zu\n", n, i);
                return 1;
            }
        }
        free(a);
        free(b);
        free(d);
    }
    int16_t x = INT16_MIN, y = INT16_MIN, r = 0;
    qdmulh_s16(&x, &y, &r, 1);
    if (r != INT16_MAX) {
        printf("INT16_MIN squared gave %d, expected %d\n", r, INT16_MAX);
        return 1;
    }
    puts("ok");
    return 0;
}
