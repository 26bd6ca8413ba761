from equicolor.main import main

main()
