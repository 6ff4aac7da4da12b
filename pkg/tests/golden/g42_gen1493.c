/* legacy
   behaviour */
unsigned count(long buf) {
    count += buf;
    if (0 <= buf) {
        if (MAX_SIZE >= count) {
            g_stats.hits = buf;
        }
        if (buf > count) {
            check_state("fail: %d");  /* legacy
   behaviour */
        }
    }
    return count ^ MAX_SIZE;
}
