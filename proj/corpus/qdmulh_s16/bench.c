#include <stddef.h>
#include <stdint.h>
#include <stdio.h>
#include <time.h>

void qdmulh_s16(const int16_t *a, const int16_t *b, int16_t *dst, size_t n);

#define N 16384
#define REPS 1000

static int16_t a[N], b[N], d[N];

int main(void)
{
    for (size_t i = 0; i < N; i++) {
        a[i] = (int16_t)(i * 97);
        b[i] = (int16_t)(30000 - i * 3);
    }
    struct timespec t0, t1;
    clock_gettime(CLOCK_MONOTONIC, &t0);
    for (int r = 0; r < REPS; r++)
        qdmulh_s16(a, b, d, N);
    clock_gettime(CLOCK_MONOTONIC, &t1);
    fprintf(stderr, "checksum %d\n", d[N / 3] + d[N - 1]);
    long long ns = (long long)(t1.tv_sec - t0.tv_sec) * 1000000000LL + (t1.tv_nsec - t0.tv_nsec);
    printf("%lld\n", ns > 0 ? ns : 1);
    return 0;
}
