L1_1: 0
L11_1: 145/13
L3_1: 1/13
L9_1: 88/13
L5_1: 16/13
L7_1: 45/13
