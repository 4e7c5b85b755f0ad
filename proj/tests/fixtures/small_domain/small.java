// Parameters here are meant for exhaustive checking over ints in [-8, 8]
// and both booleans.
int sign(int x) {
    if (x > 0) {
        return 1;
    } else if (x < 0) {
        return -1;
    }
    return 0;
}

int bucket(int x) {
    int r = 0;
    switch (x % 4) {
        case 0:
            r = 10;
            break;
        case 1:
            r = 11;
            break;
        case 3:
            r = 9;
            break;
        default:
            r = 12;
            break;
    }
    return r;
}

int triangle(int n) {
    int acc = 0;
    for (int i = 0; i < n; i++) {
        acc += i;
    }
    return acc;
}

boolean implies(boolean p, boolean q) {
    if (p) {
        return q;
    } else {
        return true;
    }
}

int safeDiv(int a, int b) {
    int q = 0;
    int m = 1;
    if (b != 0) {
        q = a / b;
    }
    return q * m;
}

int divOrFail(int a, int b) {
    int r = a % b;
    int k = 3;
    return r + k;
}

int countDown(int n, boolean twice) {
    int steps = 0;
    int k = n;
    while (k > 0) {
        k--;
        steps++;
        if (twice) {
            steps++;
        }
    }
    return steps;
}

int mix(int a, int b, boolean flip) {
    int x = a * 3;
    int y = b - 2;
    boolean big = x > y;
    if (flip) {
        big = !big;
    }
    if (big) {
        return x;
    } else {
        return y;
    }
}
