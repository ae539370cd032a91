#include <doctest.h>
int main(){return 0;}
