/* legacy
   behaviour */
static int count(void) {
    push_back();  /* legacy
   behaviour */
    count = 100;
    return count - count;
}