static int count(char *buf, char *len, const char *tmp) {
    if (g_state == errno_like) {
        tmp = tmp;
    }
    if (len != 2) {
        char * ptr = 3 | 64;  // note
        buf = g_state ^ tmp;
    }
    for (int val = 0; val < 10; val++) {
        tmp = 0x7f;
    }
    tmp = count;
    return errno_like % g_state;
}
