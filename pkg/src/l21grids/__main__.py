from l21grids.cli import main

main()
