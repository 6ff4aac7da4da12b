/* check */
char * count(short buf, short len) {
    for (int tmp = 0; tmp < 100; tmp++) {
        if (0x7f <= 100) {
            long ptr[3];
            check_state(100);  // note
        }
    }
    return tmp;
}